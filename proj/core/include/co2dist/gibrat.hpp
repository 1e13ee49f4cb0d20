#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "co2dist/distributions.hpp"
#include "co2dist/panel.hpp"

namespace co2dist {

// Countries present in both years, in panel order.
struct GrowthSample {
  int year_from = 0;
  int year_to = 0;
  std::vector<std::string> countries;
  std::vector<double> previous;  // S_{i,t-1}
  std::vector<double> current;   // S_{i,t}
  std::size_t size() const { return countries.size(); }
};

// Throws InputError for unknown years or fewer than 3 paired countries.
GrowthSample build_growth_sample(const EmissionsPanel& panel, int year_from, int year_to);

// M1  log S_t = a + b log S_{t-1}           null b = 1
// M2  S_t / S_{t-1} = a + b (S_t + S_{t-1})/2  null b = 0
// M3  S_t / S_{t-1} = a + b S_{t-1}          null b = 0
// M4  log(S_t / S_{t-1}) = a + b S_{t-1}     null b = 0
enum class GibratMethod { m1, m2, m3, m4 };
inline constexpr std::array<GibratMethod, 4> kAllGibratMethods = {
    GibratMethod::m1, GibratMethod::m2, GibratMethod::m3, GibratMethod::m4};

std::string_view gibrat_method_code(GibratMethod method);
std::optional<GibratMethod> parse_gibrat_method(std::string_view code);
double gibrat_null_value(GibratMethod method);

struct GibratOptions {
  // HC1 standard errors instead of the classical ones.
  bool robust = false;
};

struct GibratFit {
  GibratMethod method = GibratMethod::m1;
  double alpha = 0.0;
  double beta = 0.0;
  double se_alpha = 0.0;
  double se_beta = 0.0;
  double null_value = 1.0;
  double t_statistic = 0.0;
  // Two-sided t-test of beta = null_value, n - 2 degrees of freedom. When the
  // residuals vanish the p-value is 1 if beta equals the null exactly (to
  // rounding), 0 otherwise.
  double p_value = 1.0;
  std::size_t n = 0;
};

GibratFit fit_gibrat(GibratMethod method, const GrowthSample& sample,
                     const GibratOptions& options = {});

// Proportionate-growth panel S_{i,t} = S_{i,t-1} exp(e_{i,t}), e ~ N(0, shock_sd^2)
// i.i.d., initial sizes drawn from `initial`. Countries are named C0001...,
// years run first_year .. first_year + n_years - 1. shock_sd = 0 gives constant
// trajectories. One uniform stream drives the initial draws, then the shocks
// year by year.
EmissionsPanel simulate_gibrat(std::size_t n_countries, std::size_t n_years,
                               const ParamVector& initial, double shock_sd, std::uint64_t seed,
                               int first_year = 1);

}  // namespace co2dist
