#include <gtest/gtest.h>

#include <cmath>

#include "co2dist/distributions.hpp"
#include "co2dist/error.hpp"
#include "co2dist/policy.hpp"

using namespace co2dist;

namespace {

std::vector<double> lognormal_base(std::size_t n, std::uint64_t seed) {
  return sample(ParamVector::lognormal(2.5, 2.4), n, seed);
}

std::vector<CountryValue> labelled(const std::vector<double>& v) {
  std::vector<CountryValue> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back({"K" + std::to_string(1000 + i), v[i]});
  return out;
}

}  // namespace

TEST(ComputeR, SingleCountryMedian) {
  EXPECT_DOUBLE_EQ(compute_R(0.0, 1.0, std::vector<double>{1.0}), 1.0);
}

TEST(ComputeR, ScaleLaw) {
  const auto base = lognormal_base(208, 1);
  const double r = compute_R(1.2, 2.3, base);
  EXPECT_NEAR(compute_R(1.2 + std::log(2.0), 2.3, base), 2.0 * r, 1e-13 * r);
  // log R is affine in mu with slope 1.
  for (double mu : {-3.0, 0.0, 4.5}) {
    EXPECT_NEAR(std::log(compute_R(mu, 2.3, base)) - std::log(r), mu - 1.2, 1e-12);
  }
}

TEST(ComputeR, IncreasingInMuAndSigma) {
  const auto base = lognormal_base(50, 2);
  double prev = 0.0;
  for (double mu = -2.0; mu < 3.0; mu += 0.25) {
    const double r = compute_R(mu, 1.5, base);
    EXPECT_GT(r, prev);
    prev = r;
  }
  prev = 0.0;
  for (double s = 0.01; s < 5.0; s += 0.2) {
    const double r = compute_R(1.0, s, base);
    EXPECT_GT(r, prev);
    prev = r;
  }
}

TEST(ComputeR, Errors) {
  EXPECT_THROW(compute_R(0.0, 1.0, std::vector<double>{}), InputError);
  EXPECT_THROW(compute_R(0.0, 1.0, std::vector<double>{1.0, -2.0}), InputError);
  EXPECT_THROW(compute_R(0.0, 0.0, std::vector<double>{1.0}), InputError);
}

// The printed 2030 prediction and the printed solved mu imply the same scale
// change: exp(2.7850 - 1.5053) = 1.6180 / 0.45 up to the rounding of mu.
TEST(ComputeR, TargetYearValuesScaleLaw) {
  const auto base = lognormal_base(208, 3);
  const double ratio = compute_R(2.7850, 2.3474, base) / compute_R(1.5053, 2.3474, base);
  EXPECT_NEAR(ratio, std::exp(2.7850 - 1.5053), 1e-12 * ratio);
  EXPECT_NEAR(ratio / (1.6180 / 0.45), 1.0, 0.0025);
}

TEST(Solve, RoundTripMuAndSigma) {
  UniformStream u(10);
  for (int rep = 0; rep < 40; ++rep) {
    const auto base = lognormal_base(208, 100 + rep);
    const double target = 0.1 + 2.9 * u.next();
    const double sigma = 0.5 + 2.5 * u.next();
    const double mu = solve_parameter(FreeParameter::mu, sigma, target, base);
    EXPECT_NEAR(compute_R(mu, sigma, base), target, 1e-10 * target);
    // sigma free: choose mu so that a root exists (R at sigma -> 0 below target).
    const double mu_fixed = mu - 1.0;
    const double s = solve_parameter(FreeParameter::sigma, mu_fixed, target, base);
    EXPECT_GT(s, 0.0);
    EXPECT_NEAR(compute_R(mu_fixed, s, base), target, 1e-10 * target);
  }
}

TEST(Solve, SigmaWithoutRootReportsBracket) {
  const auto base = lognormal_base(208, 4);
  // Even sigma -> 0 gives R = N e^mu / sum x, far above the target.
  try {
    solve_parameter(FreeParameter::sigma, 10.0, 0.45, base);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("at sigma ="), std::string::npos) << msg;
  }
  EXPECT_THROW(solve_parameter(FreeParameter::mu, 1.0, -0.5, base), InputError);
}

TEST(Allocate, SingleCountry) {
  const std::vector<CountryValue> ref = {{"ONLY", 2.0}};
  const auto t = allocate_targets(std::log(5.0), 1.0, 0.45, ref);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_NEAR(t[0].r, 2.5, 1e-14);
  EXPECT_EQ(t[0].rank, 1u);
}

TEST(Allocate, SelfAllocationGivesOne) {
  const std::size_t n = 208;
  const double mu = 1.5, sigma = 2.3474;
  const auto z = plotting_scores(n);
  std::vector<double> own;
  for (double zi : z) own.push_back(std::exp(mu + sigma * zi));
  for (const auto& t : allocate_targets(mu, sigma, 0.45, labelled(own))) {
    EXPECT_NEAR(t.r, 1.0, 1e-14);
    EXPECT_EQ(t.group, EmissionGroup::middle_emission);
  }
}

TEST(Allocate, MonotoneAndRanked) {
  const auto base = lognormal_base(208, 6);
  const auto t = allocate_targets(1.5053, 2.3474, 0.45, labelled(base), base.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_EQ(t[i].rank, t.size() - i);
    if (i > 0) {
      EXPECT_GE(t[i].r * t[i].reference_emissions, t[i - 1].r * t[i - 1].reference_emissions);
      EXPECT_GE(t[i].reference_emissions, t[i - 1].reference_emissions);
    }
  }
}

TEST(Allocate, AggregateConsistency) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto base = lognormal_base(208, seed);
    const double mu = 1.5053, sigma = 2.3474;
    const auto t = allocate_targets(mu, sigma, 0.45, labelled(base));
    double num = 0.0, den = 0.0;
    for (const auto& c : t) num += c.r * c.reference_emissions;
    for (double v : base) den += v;
    const double r = compute_R(mu, sigma, base);
    EXPECT_NEAR(num / den, r, 1e-13 * r);
  }
}

TEST(Allocate, GroupsAndTies) {
  EXPECT_EQ(classify_target(1.2, 0.45), EmissionGroup::low_emission);
  EXPECT_EQ(classify_target(1.0, 0.45), EmissionGroup::middle_emission);
  EXPECT_EQ(classify_target(0.45, 0.45), EmissionGroup::middle_emission);
  EXPECT_EQ(classify_target(0.4499, 0.45), EmissionGroup::high_emission);
  const std::vector<CountryValue> ref = {{"ZZZ", 1.0}, {"AAA", 1.0}, {"MMM", 0.5}};
  const auto t = allocate_targets(0.0, 1.0, 0.45, ref);
  EXPECT_EQ(t[0].country, "MMM");
  EXPECT_EQ(t[1].country, "AAA");
  EXPECT_EQ(t[2].country, "ZZZ");
}

TEST(Allocate, CountMismatchIsAnError) {
  const auto base = lognormal_base(10, 1);
  EXPECT_THROW(allocate_targets(1.0, 1.0, 0.45, labelled(base), 11), InputError);
}

TEST(Inequality, ClosedForm) {
  EXPECT_DOUBLE_EQ(inequality_index(2.0), 2.0);
  EXPECT_NEAR(inequality_index(2.3474), 2.7551, 1e-4);
  EXPECT_DOUBLE_EQ(inequality_change(2.0, 2.3474), 2.3474 * 2.3474 / 2 - 2.0);
  EXPECT_THROW(inequality_index(0.0), InputError);
}

TEST(Inequality, NumericTheilIntegral) {
  EXPECT_NEAR(theil_index_numeric(1.5, 2.3474), 2.3474 * 2.3474 / 2.0, 1e-6);
  UniformStream u(12);
  for (int rep = 0; rep < 10; ++rep) {
    const double mu = -3.0 + 8.0 * u.next();
    const double sigma = 0.05 + 3.0 * u.next();
    EXPECT_NEAR(theil_index_numeric(mu, sigma), 0.5 * sigma * sigma, 1e-6) << mu << ' ' << sigma;
  }
}
