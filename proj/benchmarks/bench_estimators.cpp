#include <benchmark/benchmark.h>

#include <vector>

#include "jpscdf/estimators.hpp"
#include "jpscdf/rng.hpp"

namespace {

jps::JpsSample make_sample(std::size_t n, int set_size) {
  jps::RandomStream rng(1);
  jps::JpsSample sample;
  sample.set_size = set_size;
  sample.pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    sample.pairs.push_back({rng.next_open01() * 10.0 - 5.0,
                            1 + static_cast<int>(rng.next_below(set_size))});
  }
  return sample;
}

void BM_PrepareSample(benchmark::State& state) {
  const jps::JpsSample sample = make_sample(state.range(0), 5);
  for (auto _ : state) {
    jps::PreparedJpsSample prepared(sample);
    benchmark::DoNotOptimize(prepared);
  }
}
BENCHMARK(BM_PrepareSample)->Arg(50)->Arg(300);

// Windowed evaluation cost per point; bandwidth sets the window size.
void BM_KdfJpsEval(benchmark::State& state) {
  const jps::JpsSample sample = make_sample(300, 5);
  const jps::PreparedJpsSample prepared(sample);
  const jps::KernelSpec kernel = jps::kernel_spec(jps::KernelKind::Epanechnikov);
  const double h = static_cast<double>(state.range(0)) / 10.0;
  double t = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(prepared.kdf(kernel, h, t));
    t += 0.01;
    if (t > 5.0) t = -5.0;
  }
}
BENCHMARK(BM_KdfJpsEval)->Arg(2)->Arg(10)->Arg(50);

void BM_KpdfJpsEval(benchmark::State& state) {
  const jps::JpsSample sample = make_sample(300, 5);
  const jps::PreparedJpsSample prepared(sample);
  const jps::KernelSpec kernel = jps::kernel_spec(jps::KernelKind::Cosine);
  double t = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(prepared.kpdf(kernel, 0.5, t));
    t += 0.01;
    if (t > 5.0) t = -5.0;
  }
}
BENCHMARK(BM_KpdfJpsEval);

}  // namespace
