#include <benchmark/benchmark.h>

#include "jpscdf/simulate.hpp"

namespace {

void BM_DrawJps(benchmark::State& state) {
  const jps::ParentDistribution dist(jps::DistKind::StdNormal);
  const jps::RankingModel model{state.range(1) / 100.0};
  jps::RandomStream rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(jps::draw_jps(dist, state.range(0), 5, model, rng));
  }
}
BENCHMARK(BM_DrawJps)->Args({50, 100})->Args({50, 75})->Args({300, 75})
    ->Unit(benchmark::kMicrosecond);

// End-to-end replication cost of the RE harness at one grid point.
void BM_ReCurve(benchmark::State& state) {
  jps::ReCurveConfig config;
  config.dist = jps::DistKind::Exp1;
  config.n = 50;
  config.set_size = 5;
  config.rho = 0.9;
  config.p_grid = {0.5};
  config.reps = state.range(0);
  config.seed = 99;
  config.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jps::re_curve(config));
  }
}
BENCHMARK(BM_ReCurve)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
