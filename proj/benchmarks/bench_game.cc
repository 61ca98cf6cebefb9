// Fixpoint engines on random symbolic arenas. The arena is built once
// per size; the target sets rotate so every iteration runs a distinct
// fixpoint over the same transition relations.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "sic/bdd.hh"
#include "sic/game.hh"
#include "support/graphgen.hh"

using namespace sic;
using namespace sic::testing;

namespace {

struct BenchArena {
  bdd::Manager m;
  Arena a;
  std::vector<bdd::Ref> sets;

  BenchArena(int pairs, int density, unsigned seed) {
    std::mt19937 rng(seed);
    int states = 1 << pairs;
    register_plain_bits(m, pairs);
    a = make_arena(m, pairs,
                   edges_to_rel(m, pairs, random_edges(rng, states, density)),
                   edges_to_rel(m, pairs, random_edges(rng, states, density)));
    for (int k = 0; k < 32; ++k) {
      std::vector<int> targets;
      for (int s = 0; s < states; ++s)
        if (rng() % 8 == 0) targets.push_back(s);
      sets.push_back(states_to_set(m, pairs, targets));
    }
  }
};

void BM_Attractor(benchmark::State& state) {
  BenchArena b(static_cast<int>(state.range(0)), 4, 4002);
  std::size_t k = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(attr_output(b.a, b.sets[k++ % b.sets.size()]).set);
}
BENCHMARK(BM_Attractor)->Arg(6)->Arg(8)->Arg(10);

void BM_WinSafe(benchmark::State& state) {
  BenchArena b(static_cast<int>(state.range(0)), 4, 4003);
  std::size_t k = 0;
  for (auto _ : state) {
    bdd::Ref safe = b.m.negate(b.sets[k++ % b.sets.size()]);
    benchmark::DoNotOptimize(win_safe(b.a, safe).set);
  }
}
BENCHMARK(BM_WinSafe)->Arg(6)->Arg(8)->Arg(10);

void BM_Reachable(benchmark::State& state) {
  BenchArena b(static_cast<int>(state.range(0)), 4, 4004);
  bdd::Ref t = b.m.disj(b.a.t_out, b.a.t_in);
  std::size_t k = 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(reachable(b.a, t, b.sets[k++ % b.sets.size()]).set);
}
BENCHMARK(BM_Reachable)->Arg(6)->Arg(8)->Arg(10);

}  // namespace
