// Kernel throughput: construction from expression trees, the binary
// connectives, quantification, and model counting. Apply/quantify run
// against a warm manager, so steady-state cache behaviour is included
// in what is measured.
#include <benchmark/benchmark.h>

#include <memory>
#include <random>
#include <vector>

#include "sic/bdd.hh"
#include "support/boolgen.hh"

using namespace sic;
using namespace sic::testing;

namespace {

std::vector<std::unique_ptr<BoolNode>> expr_pool(int bits, std::size_t n) {
  std::mt19937 rng(4001);
  std::vector<std::unique_ptr<BoolNode>> pool;
  for (std::size_t k = 0; k < n; ++k)
    pool.push_back(random_bool_expr(rng, bits, 7));
  return pool;
}

void BM_Build(benchmark::State& state) {
  int bits = static_cast<int>(state.range(0));
  auto pool = expr_pool(bits, 64);
  std::size_t k = 0;
  for (auto _ : state) {
    bdd::Manager m;
    register_plain_bits(m, (bits + 1) / 2);
    benchmark::DoNotOptimize(bdd_of(*pool[k++ % pool.size()], m));
  }
}
BENCHMARK(BM_Build)->Arg(8)->Arg(12)->Arg(16);

void BM_Apply(benchmark::State& state) {
  int bits = static_cast<int>(state.range(0));
  auto pool = expr_pool(bits, 64);
  bdd::Manager m;
  register_plain_bits(m, (bits + 1) / 2);
  std::vector<bdd::Ref> fs;
  for (const auto& e : pool) fs.push_back(bdd_of(*e, m));
  std::size_t k = 0;
  for (auto _ : state) {
    bdd::Ref f = fs[k % fs.size()];
    bdd::Ref g = fs[(k + 13) % fs.size()];
    benchmark::DoNotOptimize(m.apply(static_cast<bdd::Op>(k % 4), f, g));
    ++k;
  }
}
BENCHMARK(BM_Apply)->Arg(8)->Arg(12)->Arg(16);

void BM_Exists(benchmark::State& state) {
  int bits = static_cast<int>(state.range(0));
  auto pool = expr_pool(bits, 64);
  bdd::Manager m;
  register_plain_bits(m, (bits + 1) / 2);
  std::vector<bdd::Ref> fs;
  for (const auto& e : pool) fs.push_back(bdd_of(*e, m));
  std::vector<int> evens;
  for (int b = 0; b < bits; b += 2) evens.push_back(b);
  std::size_t k = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(m.exists(evens, fs[k++ % fs.size()]));
}
BENCHMARK(BM_Exists)->Arg(8)->Arg(12)->Arg(16);

void BM_SatCount(benchmark::State& state) {
  int bits = static_cast<int>(state.range(0));
  auto pool = expr_pool(bits, 64);
  bdd::Manager m;
  register_plain_bits(m, (bits + 1) / 2);
  std::vector<bdd::Ref> fs;
  for (const auto& e : pool) fs.push_back(bdd_of(*e, m));
  std::vector<int> over;
  for (int b = 0; b < bits; ++b) over.push_back(b);
  std::size_t k = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(m.sat_count(fs[k++ % fs.size()], over));
}
BENCHMARK(BM_SatCount)->Arg(8)->Arg(12)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
