#include <benchmark/benchmark.h>

#include "jpscdf/moments.hpp"

namespace {

// Uncached big-rational evaluation cost of the alternating triple sum.
void BM_EW2J(benchmark::State& state) {
  const long n = state.range(0);
  const int set_size = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(jps::e_w2j(n, set_size));
  }
}
BENCHMARK(BM_EW2J)->Args({50, 10})->Args({300, 10})->Args({1000, 10})->Unit(benchmark::kMillisecond);

void BM_VarW(benchmark::State& state) {
  const long n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(jps::var_w(n, 10));
  }
}
BENCHMARK(BM_VarW)->Arg(300)->Arg(3000);

void BM_EnumerationOracle(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(jps::e_w2j_by_enumeration(state.range(0), 4));
  }
}
BENCHMARK(BM_EnumerationOracle)->Arg(6)->Arg(10);

void BM_FiniteNVariance(benchmark::State& state) {
  const jps::ParentDistribution dist(jps::DistKind::StdNormal);
  const std::optional<jps::KernelSmoothing> smoothing{
      jps::KernelSmoothing{jps::kernel_spec(jps::KernelKind::Epanechnikov), 0.3}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(jps::finite_n_variance(dist, 0.2, 50, 5, smoothing));
  }
}
BENCHMARK(BM_FiniteNVariance)->Unit(benchmark::kMicrosecond);

}  // namespace
