#include "co2dist/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "co2dist/error.hpp"
#include "co2dist/special.hpp"

namespace co2dist {
namespace {

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Sandwich (X'X)^-1 S (X'X)^-1 for X = [1, x - xbar]; S given by its entries.
// Returns errors of the uncentred intercept and the slope.
CoefficientErrors sandwich(std::span<const double> x, double s00, double s01, double s11) {
  const double n = static_cast<double>(x.size());
  const double xbar = mean_of(x);
  double sxx = 0.0;
  for (double v : x) sxx += (v - xbar) * (v - xbar);
  // Centred design: X'X = diag(n, sxx).
  const double v00 = s00 / (n * n);
  const double v01 = s01 / (n * sxx);
  const double v11 = s11 / (sxx * sxx);
  const double var_alpha = v00 - 2.0 * xbar * v01 + xbar * xbar * v11;
  return {std::sqrt(std::max(0.0, var_alpha)), std::sqrt(v11)};
}

}  // namespace

SimpleOls fit_simple_ols(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("ols: x and y differ in length");
  if (x.size() < 3) throw InputError("ols: need at least 3 observations");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw InputError("ols: non-finite value");
  }
  const std::size_t n = x.size();
  const double an = static_cast<double>(n);
  const double xbar = mean_of(x);
  const double ybar = mean_of(y);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - xbar, dy = y[i] - ybar;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw InputError("ols: regressor has zero variance");

  SimpleOls fit;
  fit.n = n;
  fit.beta = sxy / sxx;
  fit.alpha = ybar - fit.beta * xbar;
  fit.residuals.resize(n);
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // Centred form keeps exact data exact.
    fit.residuals[i] = (y[i] - ybar) - fit.beta * (x[i] - xbar);
    sse += fit.residuals[i] * fit.residuals[i];
  }
  const double df = an - 2.0;
  fit.sigma2 = sse / df;
  fit.se_beta = std::sqrt(fit.sigma2 / sxx);
  fit.se_alpha = std::sqrt(fit.sigma2 * (1.0 / an + xbar * xbar / sxx));
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
  const double ssr = syy - sse;
  if (sse > 0.0) {
    fit.f_statistic = std::max(0.0, ssr) / fit.sigma2;
    fit.f_p_value = special::f_sf(fit.f_statistic, 1.0, df);
  } else {
    fit.f_statistic = std::numeric_limits<double>::infinity();
    fit.f_p_value = syy > 0.0 ? 0.0 : 1.0;
  }
  return fit;
}

CoefficientErrors hc_errors(std::span<const double> x, const SimpleOls& fit, HcType type) {
  if (x.size() != fit.residuals.size()) throw InputError("hc errors: size mismatch");
  const double xbar = mean_of(x);
  double s00 = 0.0, s01 = 0.0, s11 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u2 = fit.residuals[i] * fit.residuals[i];
    const double d = x[i] - xbar;
    s00 += u2;
    s01 += u2 * d;
    s11 += u2 * d * d;
  }
  auto e = sandwich(x, s00, s01, s11);
  if (type == HcType::hc1) {
    const double n = static_cast<double>(x.size());
    const double k = std::sqrt(n / (n - 2.0));
    e.se_alpha *= k;
    e.se_beta *= k;
  }
  return e;
}

CoefficientErrors newey_west_errors(std::span<const double> x, const SimpleOls& fit,
                                    std::size_t lag) {
  if (x.size() != fit.residuals.size()) throw InputError("newey-west: size mismatch");
  const std::size_t n = x.size();
  const double xbar = mean_of(x);
  const auto& u = fit.residuals;
  double s00 = 0.0, s01 = 0.0, s11 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - xbar;
    s00 += u[i] * u[i];
    s01 += u[i] * u[i] * d;
    s11 += u[i] * u[i] * d * d;
  }
  for (std::size_t l = 1; l <= lag && l < n; ++l) {
    const double w = 1.0 - static_cast<double>(l) / static_cast<double>(lag + 1);
    double g00 = 0.0, g01 = 0.0, g11 = 0.0;
    for (std::size_t t = l; t < n; ++t) {
      const double uu = u[t] * u[t - l];
      const double dt = x[t] - xbar, ds = x[t - l] - xbar;
      g00 += uu;
      g01 += uu * (dt + ds);  // z_t z_s' + z_s z_t', off-diagonal
      g11 += uu * dt * ds;
    }
    s00 += w * 2.0 * g00;
    s01 += w * g01;
    s11 += w * 2.0 * g11;
  }
  return sandwich(x, s00, s01, s11);
}

std::size_t newey_west_default_lag(std::size_t n) {
  return static_cast<std::size_t>(std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 2.0 / 9.0)));
}

}  // namespace co2dist
