#pragma once

#include <span>
#include <vector>

namespace co2dist {

// Straight-line least squares y = alpha + beta x with classical standard errors.
struct SimpleOls {
  std::size_t n = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double se_alpha = 0.0;
  double se_beta = 0.0;
  double sigma2 = 0.0;  // residual variance, n - 2 denominator
  double r_squared = 0.0;
  double f_statistic = 0.0;
  double f_p_value = 1.0;  // F(1, n - 2)
  std::vector<double> residuals;
};

// Requires n >= 3 and a non-constant regressor (InputError otherwise).
SimpleOls fit_simple_ols(std::span<const double> x, std::span<const double> y);

struct CoefficientErrors {
  double se_alpha = 0.0;
  double se_beta = 0.0;
};

// White heteroskedasticity-consistent errors; HC1 scales HC0 by n / (n - 2).
enum class HcType { hc0, hc1 };
CoefficientErrors hc_errors(std::span<const double> x, const SimpleOls& fit, HcType type);

// Newey-West errors with Bartlett weights 1 - l / (lag + 1), no small-sample
// correction. lag = 0 reduces to HC0.
CoefficientErrors newey_west_errors(std::span<const double> x, const SimpleOls& fit,
                                    std::size_t lag);

// floor(4 (n / 100)^(2/9)).
std::size_t newey_west_default_lag(std::size_t n);

}  // namespace co2dist
