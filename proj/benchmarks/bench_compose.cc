// End-to-end pipelines: parsing, composition, refinement, and safety
// checking. Every iteration compiles into a fresh manager, so the
// numbers cover the whole operation rather than warm-cache lookups.
#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "sic/ast.hh"
#include "sic/compose.hh"
#include "sic/model.hh"
#include "sic/refine.hh"
#include "sic/safety.hh"
#include "sic/symbolic.hh"
#include "support/ifgen.hh"

using namespace sic;

namespace {

const char* kPipe = R"(
module Pump:
  var p: [0..15]
  global var bus: [0..3]
  output put { p > 0 ==> p' := p - 1, bus' := 1; }
  input ack { true ==> ; }
  init: p = 15 & bus = 0

module Tank:
  var t: [0..15]
  global var bus: [0..3]
  input put { bus' = 1 & t < 15 ==> t' := t + 1; }
  output ack { t > 0 ==> t' := t - 1, bus' := 2; }
  init: t = 0 & bus = 0
)";

const char* kRefinePair = R"(
module Spec:
  var n: [0..15]
  global var busy: bool
  output go { n < 15 & busy = false ==> n' := n + 1, busy' := true; }
  input ack { busy' = false ==> ; }
  init: n = 0 & busy = false

module Impl:
  var n: [0..15]
  global var busy: bool
  output go { n < 15 & busy = false ==> n' := n + 1, busy' := true; }
  input ack { busy' = false ==> ; }
  input nudge { true ==> ; }
  input poke { true ==> ; }
  init: n = 0 & busy = false
)";

const char* kWalker = R"(
module Walker:
  var w: [0..63]
  output step { w < 63 ==> w' := w + 1; }
  input jump { true ==> w' := 0; }
  init: w = 0
)";

std::vector<Interface> load(const char* text) {
  std::vector<Interface> out;
  for (const ModuleAST& m : parse(text, "<bench>")) out.push_back(validate(m));
  return out;
}

void BM_Parse(benchmark::State& state) {
  std::mt19937 rng(4005);
  testing::GenConfig cfg;
  std::vector<ModuleAST> mods;
  for (int k = 0; k < 40; ++k)
    mods.push_back(testing::random_module(rng, "M" + std::to_string(k), cfg));
  std::string text = pretty_print(mods);
  for (auto _ : state) benchmark::DoNotOptimize(parse(text, "<bench>"));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_Parse);

void BM_Compile(benchmark::State& state) {
  std::vector<Interface> mods = load(kPipe);
  for (auto _ : state) {
    bdd::Manager m;
    VarTable table(m);
    benchmark::DoNotOptimize(compile(mods[0], table));
    benchmark::DoNotOptimize(compile(mods[1], table));
  }
}
BENCHMARK(BM_Compile);

void BM_Compose(benchmark::State& state) {
  std::vector<Interface> mods = load(kPipe);
  for (auto _ : state) {
    bdd::Manager m;
    VarTable table(m);
    SymbolicInterface a = compile(mods[0], table);
    SymbolicInterface b = compile(mods[1], table);
    benchmark::DoNotOptimize(compose(a, b).module.name);
  }
}
BENCHMARK(BM_Compose);

void BM_Refine(benchmark::State& state) {
  std::vector<Interface> mods = load(kRefinePair);
  for (auto _ : state) {
    bdd::Manager m;
    VarTable table(m);
    SymbolicInterface spec = compile(mods[0], table, "1");
    SymbolicInterface impl = compile(mods[1], table, "2");
    benchmark::DoNotOptimize(refines(impl, spec).refines);
  }
}
BENCHMARK(BM_Refine);

void BM_Safety(benchmark::State& state) {
  std::vector<Interface> mods = load(kWalker);
  ExprPtr phi = parse_expression("w < 60", "<bench>");
  for (auto _ : state) {
    bdd::Manager m;
    VarTable table(m);
    SymbolicInterface si = compile(mods[0], table);
    benchmark::DoNotOptimize(check_pessimistic(si, *phi).safe);
    benchmark::DoNotOptimize(check_optimistic(si, *phi).safe);
  }
}
BENCHMARK(BM_Safety);

}  // namespace
