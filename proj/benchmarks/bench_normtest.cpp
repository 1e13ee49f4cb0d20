#include <benchmark/benchmark.h>

#include "co2dist/distributions.hpp"
#include "co2dist/normtest.hpp"

using namespace co2dist;

static void BM_Lognormality(benchmark::State& state) {
  const auto test = kAllNormalityTests[static_cast<std::size_t>(state.range(0))];
  const auto x = sample(ParamVector::lognormal(2.0, 2.3), 208, 7);
  for (auto _ : state) benchmark::DoNotOptimize(test_lognormality(test, x));
  state.SetLabel(std::string(test_code(test)));
}
BENCHMARK(BM_Lognormality)->DenseRange(0, 6);

static void BM_ShapiroWilkCoefficients(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(shapiro_wilk_coefficients(static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_ShapiroWilkCoefficients)->Arg(208)->Arg(5000);
