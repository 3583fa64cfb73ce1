#include <benchmark/benchmark.h>

#include "itl/bisim.hpp"
#include "itl/condense.hpp"
#include "itl/families.hpp"
#include "itl/oracle.hpp"
#include "itl/parser.hpp"

using namespace itl;

static void BM_TruthSetDiam(benchmark::State& state) {
  Model d = builtin_model("diam", static_cast<int>(state.range(0)));
  Fptr f = parse("(p U (p -> <> p)) R (X p | [] p)");
  for (auto _ : state) benchmark::DoNotOptimize(d.truth_set(f));
}
BENCHMARK(BM_TruthSetDiam)->Arg(3)->Arg(4)->Arg(5);

static void BM_MaxFamilyHt(benchmark::State& state) {
  Model h = builtin_model("ht", static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        max_family(h, h, static_cast<int>(state.range(0)), Flavor::Until));
}
BENCHMARK(BM_MaxFamilyHt)->Arg(2)->Arg(3)->Arg(4);

static void BM_EnumerateModels(benchmark::State& state) {
  SearchSpec spec;
  spec.max_worlds = static_cast<int>(state.range(0));
  spec.atoms = {"p"};
  for (auto _ : state) benchmark::DoNotOptimize(count_models(spec));
}
BENCHMARK(BM_EnumerateModels)->Arg(2)->Arg(3);

static void BM_BoundedDecide(benchmark::State& state) {
  Fptr f = parse("(X p -> X q) -> X (p -> q)");
  SearchSpec spec;
  spec.max_worlds = 3;
  spec.atoms = {"p", "q"};
  for (auto _ : state) benchmark::DoNotOptimize(bounded_decide(f, spec));
}
BENCHMARK(BM_BoundedDecide);

static void BM_Condense(benchmark::State& state) {
  // a comb-shaped tree with alternating labels
  std::vector<std::vector<std::string>> labels;
  std::vector<std::pair<int, int>> edges;
  int n = static_cast<int>(state.range(0));
  for (int i = 0; i < n; ++i) {
    labels.push_back({i % 2 ? "a" : "b"});
    if (i) edges.emplace_back((i - 1) / 2, i);
  }
  LabelledTree t = LabelledTree::make(LabelledPoset::make({}, labels, edges));
  for (auto _ : state) benchmark::DoNotOptimize(condense(t));
}
BENCHMARK(BM_Condense)->Arg(15)->Arg(63)->Arg(255);

BENCHMARK_MAIN();
