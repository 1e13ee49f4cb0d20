#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "co2dist/distributions.hpp"
#include "co2dist/policy.hpp"

using namespace co2dist;

namespace {
const std::vector<double>& base() {
  static const auto x = sample(ParamVector::lognormal(2.5, 2.4), 208, 20231);
  return x;
}
}  // namespace

static void BM_ComputeR(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(compute_R(2.785, 2.3474, base()));
}
BENCHMARK(BM_ComputeR);

static void BM_SolveMu(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_parameter(FreeParameter::mu, 2.3474, 0.45, base()));
  }
}
BENCHMARK(BM_SolveMu);

static void BM_SolveSigma(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_parameter(FreeParameter::sigma, 1.0, 0.45, base()));
  }
}
BENCHMARK(BM_SolveSigma);

static void BM_AllocateTargets(benchmark::State& state) {
  std::vector<CountryValue> ref;
  for (std::size_t i = 0; i < base().size(); ++i) {
    ref.push_back({"C" + std::to_string(i), base()[i]});
  }
  for (auto _ : state) benchmark::DoNotOptimize(allocate_targets(1.5053, 2.3474, 0.45, ref));
}
BENCHMARK(BM_AllocateTargets);

static void BM_TheilNumeric(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(theil_index_numeric(2.5, 2.4));
}
BENCHMARK(BM_TheilNumeric);
