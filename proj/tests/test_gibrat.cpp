#include <gtest/gtest.h>

#include <cmath>

#include "co2dist/error.hpp"
#include "co2dist/gibrat.hpp"
#include "co2dist/normtest.hpp"

using namespace co2dist;

namespace {

GrowthSample proportional_sample(double c) {
  GrowthSample s;
  const double sizes[] = {0.013, 0.4, 2.5, 7.0, 31.0, 150.0, 977.0, 4693.3};
  for (double v : sizes) {
    s.countries.push_back("X" + std::to_string(s.countries.size()));
    s.previous.push_back(v);
    s.current.push_back(c * v);
  }
  return s;
}

GrowthSample noisy_sample(double scale) {
  const auto panel = simulate_gibrat(60, 2, ParamVector::lognormal(2.0, 1.5), 0.1, 17);
  auto s = build_growth_sample(panel, 1, 2);
  for (auto& v : s.previous) v *= scale;
  for (auto& v : s.current) v *= scale;
  return s;
}

}  // namespace

TEST(Gibrat, NoiselessProportionalGrowthExact) {
  const double c = 1.03;
  const auto s = proportional_sample(c);
  const auto m1 = fit_gibrat(GibratMethod::m1, s);
  EXPECT_NEAR(m1.beta, 1.0, 1e-12);
  EXPECT_NEAR(m1.alpha, std::log(c), 1e-12);
  const auto m3 = fit_gibrat(GibratMethod::m3, s);
  EXPECT_NEAR(m3.beta, 0.0, 1e-12);
  EXPECT_NEAR(m3.alpha, c, 1e-12);
  const auto m4 = fit_gibrat(GibratMethod::m4, s);
  EXPECT_NEAR(m4.beta, 0.0, 1e-12);
  EXPECT_NEAR(m4.alpha, std::log(c), 1e-12);
  const auto m2 = fit_gibrat(GibratMethod::m2, s);
  EXPECT_NEAR(m2.beta, 0.0, 1e-12);
  EXPECT_NEAR(m2.alpha, c, 1e-12);
}

TEST(Gibrat, NullValues) {
  EXPECT_EQ(gibrat_null_value(GibratMethod::m1), 1.0);
  for (auto m : {GibratMethod::m2, GibratMethod::m3, GibratMethod::m4}) {
    EXPECT_EQ(gibrat_null_value(m), 0.0);
  }
  for (auto m : kAllGibratMethods) EXPECT_EQ(parse_gibrat_method(gibrat_method_code(m)), m);
}

TEST(Gibrat, BuildSampleFiltersMissing) {
  EmissionsPanel p({"A", "B", "C", "D"}, {1, 2},
                   {1.0, 1.1, 2.0, std::nullopt, 3.0, 3.3, 4.0, 4.1});
  const auto s = build_growth_sample(p, 1, 2);
  EXPECT_EQ(s.size(), 3u);
  EXPECT_EQ(s.countries, (std::vector<std::string>{"A", "C", "D"}));
  EmissionsPanel q({"A", "B"}, {1, 2}, {1.0, 1.1, 2.0, std::nullopt});
  EXPECT_THROW(build_growth_sample(q, 1, 2), InputError);
  EXPECT_THROW(build_growth_sample(p, 1, 3), InputError);
}

TEST(Gibrat, SyntheticPanelPairs) {
  const auto panel = simulate_gibrat(50, 3, ParamVector::lognormal(1, 1), 0.05, 3);
  EXPECT_EQ(build_growth_sample(panel, 1, 2).size(), 50u);
}

TEST(Gibrat, DegenerateRegressor) {
  GrowthSample s;
  s.countries = {"A", "B", "C"};
  s.previous = {2.0, 2.0, 2.0};
  s.current = {2.1, 1.9, 2.0};
  EXPECT_THROW(fit_gibrat(GibratMethod::m3, s), InputError);
}

TEST(Gibrat, RescalingInvariance) {
  const auto a = noisy_sample(1.0);
  const double c = 37.5;
  const auto b = noisy_sample(c);
  const auto a1 = fit_gibrat(GibratMethod::m1, a), b1 = fit_gibrat(GibratMethod::m1, b);
  EXPECT_NEAR(b1.beta, a1.beta, 1e-12);
  EXPECT_NEAR(b1.p_value, a1.p_value, 1e-10);
  for (auto m : {GibratMethod::m3, GibratMethod::m4}) {
    const auto fa = fit_gibrat(m, a), fb = fit_gibrat(m, b);
    EXPECT_NEAR(fb.beta, fa.beta / c, 1e-12 * std::fabs(fa.beta / c) + 1e-300);
    EXPECT_NEAR(fb.t_statistic, fa.t_statistic, 1e-9 * std::fabs(fa.t_statistic));
    EXPECT_NEAR(fb.p_value, fa.p_value, 1e-10);
  }
}

TEST(Gibrat, RobustErrorsDifferButCoefficientsDoNot) {
  const auto s = noisy_sample(1.0);
  const auto plain = fit_gibrat(GibratMethod::m4, s);
  const auto robust = fit_gibrat(GibratMethod::m4, s, {.robust = true});
  EXPECT_EQ(plain.beta, robust.beta);
  EXPECT_NE(plain.se_beta, robust.se_beta);
}

TEST(Gibrat, PValueIsTwoSidedT) {
  const auto s = noisy_sample(1.0);
  const auto f = fit_gibrat(GibratMethod::m1, s);
  EXPECT_NEAR(f.t_statistic, (f.beta - 1.0) / f.se_beta, 1e-12);
  EXPECT_EQ(f.n, 60u);
  EXPECT_GE(f.p_value, 0.0);
  EXPECT_LE(f.p_value, 1.0);
}

TEST(Gibrat, M1SizeUnderTheNull) {
  int rejections = 0;
  const int reps = 1000;
  for (int r = 0; r < reps; ++r) {
    const auto panel = simulate_gibrat(100, 2, ParamVector::lognormal(2.0, 2.0), 0.1, 500 + r);
    rejections += fit_gibrat(GibratMethod::m1, build_growth_sample(panel, 1, 2)).p_value < 0.05;
  }
  const double rate = static_cast<double>(rejections) / reps;
  EXPECT_GT(rate, 0.03);
  EXPECT_LT(rate, 0.07);
}

TEST(Simulate, ZeroShockKeepsTrajectoriesConstant) {
  const auto panel = simulate_gibrat(20, 5, ParamVector::lognormal(1, 1), 0.0, 8, 2000);
  EXPECT_EQ(panel.years().front(), 2000);
  for (std::size_t c = 0; c < panel.country_count(); ++c) {
    for (std::size_t t = 1; t < panel.year_count(); ++t) {
      EXPECT_EQ(*panel.value(c, t), *panel.value(c, 0));
    }
  }
}

TEST(Simulate, DeterministicAndValidated) {
  const auto a = simulate_gibrat(10, 4, ParamVector::gamma(2, 1), 0.2, 1);
  EXPECT_EQ(a, simulate_gibrat(10, 4, ParamVector::gamma(2, 1), 0.2, 1));
  EXPECT_THROW(simulate_gibrat(10, 1, ParamVector::gamma(2, 1), 0.2, 1), InputError);
  EXPECT_THROW(simulate_gibrat(10, 3, ParamVector::gamma(2, 1), -0.2, 1), InputError);
}

TEST(Simulate, LogVarianceGrowsLinearly) {
  const std::size_t countries = 200, years = 40;
  const double s0 = 1.0, shock = 0.15;
  std::vector<double> var_sum(years, 0.0);
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    const auto p = simulate_gibrat(countries, years, ParamVector::lognormal(0, s0), shock, 70 + r);
    for (std::size_t t = 0; t < years; ++t) {
      double m = 0.0, m2 = 0.0;
      for (std::size_t c = 0; c < countries; ++c) {
        const double l = std::log(*p.value(c, t));
        m += l;
        m2 += l * l;
      }
      m /= countries;
      var_sum[t] += (m2 - countries * m * m) / (countries - 1);
    }
  }
  for (std::size_t t = 0; t < years; t += 13) {
    const double expected = s0 * s0 + static_cast<double>(t) * shock * shock;
    EXPECT_NEAR(var_sum[t] / reps, expected, 0.05 * expected) << t;
  }
}
