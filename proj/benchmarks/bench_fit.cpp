#include <benchmark/benchmark.h>

#include "co2dist/distributions.hpp"
#include "co2dist/fit.hpp"
#include "co2dist/special.hpp"

using namespace co2dist;

static void BM_NormalQuantile(benchmark::State& state) {
  double p = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(special::normal_quantile(p));
    p += 1e-6;
    if (p >= 1.0) p = 1e-6;
  }
}
BENCHMARK(BM_NormalQuantile);

static void BM_SampleLognormal(benchmark::State& state) {
  const auto p = ParamVector::lognormal(2.5, 2.4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample(p, static_cast<std::size_t>(state.range(0)), 20231));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleLognormal)->Arg(208)->Arg(10000);

// One numeric fit per model on a cross-section-sized sample.
static void BM_FitModel(benchmark::State& state) {
  const auto model = kAllModels[static_cast<std::size_t>(state.range(0))];
  const auto x = sample(ParamVector::lognormal(2.5, 2.4), 208, 20231);
  for (auto _ : state) benchmark::DoNotOptimize(fit_mle(model, x));
  state.SetLabel(std::string(model_code(model)));
}
BENCHMARK(BM_FitModel)->DenseRange(0, 5)->Unit(benchmark::kMicrosecond);

static void BM_FitAllAndRank(benchmark::State& state) {
  const auto x = sample(ParamVector::lognormal(2.5, 2.4),
                        static_cast<std::size_t>(state.range(0)), 20231);
  for (auto _ : state) {
    const auto fits = fit_all(x);
    benchmark::DoNotOptimize(rank_models(fits));
  }
}
BENCHMARK(BM_FitAllAndRank)->Arg(208)->Arg(10000)->Unit(benchmark::kMillisecond);
