#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "co2dist/distributions.hpp"
#include "co2dist/error.hpp"
#include "co2dist/regression.hpp"
#include "co2dist/trend.hpp"

using namespace co2dist;

namespace {

// Same series as the statsmodels oracle in tests/oracles/generate_oracles.py.
void oracle_series(std::vector<double>& years, std::vector<double>& y) {
  years.clear();
  y.clear();
  for (int i = 0; i < 52; ++i) {
    const double yr = 1970.0 + i;
    years.push_back(yr);
    y.push_back(-55.0 + 0.0285 * yr + 0.05 * std::sin(0.7 * i) + 0.03 * std::cos(1.9 * i));
  }
}

}  // namespace

TEST(Ols, MatchesStatsmodels) {
  std::vector<double> x, y;
  oracle_series(x, y);
  const auto f = fit_simple_ols(x, y);
  EXPECT_NEAR(f.alpha, -54.60480061829505, 1e-9);
  EXPECT_NEAR(f.beta, 0.028302735258544053, 1e-12);
  EXPECT_NEAR(f.se_alpha, 0.7715222312278167, 1e-9);
  EXPECT_NEAR(f.se_beta, 0.00038662010067428093, 1e-12);
  EXPECT_NEAR(f.r_squared, 0.9907562357705445, 1e-12);
  EXPECT_NEAR(f.f_statistic, 5359.051849318478, 1e-6);
  EXPECT_NEAR(f.f_p_value, 1.5792247150045425e-52, 1e-60);

  const auto hc0 = hc_errors(x, f, HcType::hc0);
  EXPECT_NEAR(hc0.se_alpha, 0.7465788063167691, 1e-9);
  EXPECT_NEAR(hc0.se_beta, 0.00037429602699515766, 1e-12);
  const auto hc1 = hc_errors(x, f, HcType::hc1);
  EXPECT_NEAR(hc1.se_alpha, 0.7613639803688028, 1e-9);
  EXPECT_NEAR(hc1.se_beta, 0.00038170854910171215, 1e-12);

  EXPECT_EQ(newey_west_default_lag(52), 3u);
  const auto nw = newey_west_errors(x, f, 3);
  EXPECT_NEAR(nw.se_alpha, 0.9204528016032583, 1e-9);
  EXPECT_NEAR(nw.se_beta, 0.00046125589174000745, 1e-12);
}

TEST(Ols, NeweyWestAtLagZeroIsWhite) {
  std::vector<double> x, y;
  oracle_series(x, y);
  const auto f = fit_simple_ols(x, y);
  const auto nw = newey_west_errors(x, f, 0);
  const auto hc0 = hc_errors(x, f, HcType::hc0);
  EXPECT_EQ(nw.se_alpha, hc0.se_alpha);
  EXPECT_EQ(nw.se_beta, hc0.se_beta);
}

TEST(Ols, Errors) {
  EXPECT_THROW(fit_simple_ols(std::vector<double>{1, 2}, std::vector<double>{1, 2}), InputError);
  EXPECT_THROW(fit_simple_ols(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}),
               InputError);
  EXPECT_THROW(fit_simple_ols(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2}), InputError);
}

TEST(Trend, ExactLine) {
  std::vector<double> years, mu;
  for (int y = 1970; y <= 2021; ++y) {
    years.push_back(y);
    mu.push_back(0.03 * y - 57.0);
  }
  const auto m = fit_trend(years, mu, TrendResponse::mu);
  EXPECT_NEAR(m.alpha, -57.0, 1e-9);
  EXPECT_NEAR(m.beta, 0.03, 1e-12);
  EXPECT_NEAR(m.r_squared, 1.0, 1e-12);
  EXPECT_NEAR(predict(m, 2030), 3.9, 1e-9);
}

TEST(Trend, YearShiftInvariance) {
  std::vector<double> years, y;
  oracle_series(years, y);
  const auto a = fit_trend(years, y, TrendResponse::sigma);
  const double k = -1970.0;
  std::vector<double> shifted;
  for (double yr : years) shifted.push_back(yr + k);
  const auto b = fit_trend(shifted, y, TrendResponse::sigma);
  EXPECT_NEAR(b.alpha, a.alpha - a.beta * k, 1e-9);
  EXPECT_NEAR(b.beta, a.beta, 1e-13);
  EXPECT_NEAR(b.r_squared, a.r_squared, 1e-12);
  EXPECT_NEAR(b.f_statistic, a.f_statistic, 1e-8 * a.f_statistic);
  EXPECT_NEAR(b.se_beta_hac, a.se_beta_hac, 1e-13);
  for (double yr : {2025.0, 2030.0, 2035.0}) EXPECT_NEAR(predict(b, yr + k), predict(a, yr), 1e-10);
}

TEST(Trend, RSquaredInUnitInterval) {
  UniformStream u(4);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> years, y;
    for (int t = 0; t < 10 + rep; ++t) {
      years.push_back(2000 + t);
      y.push_back(u.next_normal());
    }
    const auto m = fit_trend(years, y, TrendResponse::mu);
    EXPECT_GE(m.r_squared, 0.0);
    EXPECT_LE(m.r_squared, 1.0);
  }
}

TEST(Trend, ConstantYearsRejected) {
  EXPECT_THROW(fit_trend(std::vector<double>{2000, 2000, 2000}, std::vector<double>{1, 2, 3},
                         TrendResponse::mu),
               InputError);
}

TEST(Trend, FTestSizeUnderNoTrend) {
  UniformStream u(99);
  int rejections = 0;
  const int reps = 4000;
  for (int rep = 0; rep < reps; ++rep) {
    std::vector<double> years, y;
    for (int t = 0; t < 52; ++t) {
      years.push_back(1970 + t);
      y.push_back(2.0 + 0.1 * u.next_normal());
    }
    rejections += fit_trend(years, y, TrendResponse::mu).f_p_value < 0.05;
  }
  const double rate = static_cast<double>(rejections) / reps;
  EXPECT_GT(rate, 0.04);
  EXPECT_LT(rate, 0.06);
}
