#include <benchmark/benchmark.h>

#include "diamond/bounds.hpp"
#include "diamond/mimo_bc.hpp"

namespace {

const diamond::ChannelConfig kCfg{0.9, 0.9, 10.0, 10.0, 2.0, 2.0};

void BM_SumCapacity(benchmark::State& state) {
  const diamond::OptimizerOptions opts;
  for (auto _ : state) {
    auto res = diamond::sum_capacity(diamond::Rho(0.5), kCfg, opts);
    benchmark::DoNotOptimize(res.bits);
  }
}
BENCHMARK(BM_SumCapacity);

void BM_Theorem1Bound(benchmark::State& state) {
  const diamond::OptimizerOptions opts;
  for (auto _ : state) {
    auto rep = diamond::theorem1_bound(kCfg, opts);
    benchmark::DoNotOptimize(rep.theorem1);
  }
}
BENCHMARK(BM_Theorem1Bound)->Unit(benchmark::kMillisecond);

void BM_Theorem1BoundCached(benchmark::State& state) {
  const diamond::OptimizerOptions opts;
  diamond::SumCapacityCache cm(kCfg, opts);
  diamond::ChannelConfig cfg = kCfg;
  for (auto _ : state) {
    // Vary only the link capacities, as a sweep does; the covariance
    // subproblem results are shared through the cache.
    cfg.c1 = cfg.c2 = 1.0 + 0.1 * (state.iterations() % 20);
    auto rep = diamond::theorem1_bound(cfg, opts, cm);
    benchmark::DoNotOptimize(rep.theorem1);
  }
}
BENCHMARK(BM_Theorem1BoundCached)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
