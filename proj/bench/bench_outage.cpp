// Serial reference vs the OpenMP kernel for the Monte Carlo outage estimate.
#include <benchmark/benchmark.h>

#include <omp.h>

#include "specshare/montecarlo.hpp"

using namespace specshare;

namespace {

ScenarioConfig bench_config(bool underlay) {
  ScenarioConfig cfg;
  if (underlay) cfg.mode = SharingMode::underlay;
  cfg.cellular_density = 2e-4;
  cfg.manet_density = 2e-4;
  return cfg;
}

void BM_outage_serial(benchmark::State& state) {
  const ScenarioConfig cfg = bench_config(state.range(1) != 0);
  const auto trials = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(montecarlo::estimate_outage_serial(cfg, Network::cellular, trials, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_outage_parallel(benchmark::State& state) {
  const ScenarioConfig cfg = bench_config(state.range(1) != 0);
  const auto trials = static_cast<std::uint64_t>(state.range(0));
  const int threads = static_cast<int>(state.range(2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(montecarlo::estimate_outage(cfg, Network::cellular, trials, 1, threads));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = threads;
}

void parallel_args(benchmark::internal::Benchmark* b) {
  const int max_threads = omp_get_max_threads();
  for (const int mode : {0, 1}) {
    for (int t = 1; t <= max_threads; t *= 2) b->Args({20000, mode, t});
    if ((max_threads & (max_threads - 1)) != 0) b->Args({20000, mode, max_threads});
  }
}

}  // namespace

BENCHMARK(BM_outage_serial)->Args({20000, 0})->Args({20000, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_outage_parallel)->Apply(parallel_args)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
