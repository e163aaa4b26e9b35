#include <benchmark/benchmark.h>

#include "rigepi/epidemic.hpp"
#include "rigepi/graph.hpp"
#include "rigepi/monte_carlo.hpp"
#include "rigepi/motifs.hpp"
#include "rigepi/params.hpp"
#include "rigepi/theory.hpp"

namespace {

using namespace rigepi;

void BM_SampleGraph(benchmark::State& state) {
  const auto params = GraphParams::make(state.range(0), 0.25, 4.0);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto g = sample_intersection_graph(params, ++seed);
    benchmark::DoNotOptimize(g);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleGraph)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

// Small clustering means many groups, almost all empty.
void BM_SampleGraphLowClustering(benchmark::State& state) {
  const auto s = solve_params(0.01, 4.0);
  const auto params = GraphParams::make(state.range(0), s.beta, s.gamma);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto g = sample_intersection_graph(params, ++seed);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_SampleGraphLowClustering)->Arg(10'000)->Unit(benchmark::kMillisecond);

void BM_FinalSizeTable(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto t = final_size_table(k, 0.3);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_FinalSizeTable)->Arg(25)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_ExtinctionProb(benchmark::State& state) {
  const auto s = solve_params(0.5, 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(extinction_prob(s.beta, s.gamma, 0.5));
}
BENCHMARK(BM_ExtinctionProb)->Unit(benchmark::kMicrosecond);

void BM_Census4(benchmark::State& state) {
  const auto g = sample_intersection_graph(GraphParams::make(state.range(0), 0.25, 4.0), 7);
  for (auto _ : state) benchmark::DoNotOptimize(census4(g));
}
BENCHMARK(BM_Census4)->Arg(4000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_ReedFrost(benchmark::State& state) {
  const auto g = sample_intersection_graph(GraphParams::make(50'000, 0.25, 4.0), 3);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    auto o = reed_frost_run(g, 0.5, static_cast<Vertex>(seed % 50'000), ++seed, false);
    benchmark::DoNotOptimize(o);
  }
}
BENCHMARK(BM_ReedFrost)->Unit(benchmark::kMicrosecond);

void BM_MonteCarlo(benchmark::State& state) {
  McConfig cfg{.params = GraphParams::make(20'000, 0.25, 4.0)};
  cfg.p = 0.5;
  cfg.trials = 32;
  for (auto _ : state) {
    cfg.master_seed++;
    benchmark::DoNotOptimize(monte_carlo(cfg, static_cast<unsigned>(state.range(0))));
  }
}
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
