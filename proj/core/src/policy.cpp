#include "co2dist/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "co2dist/distributions.hpp"
#include "co2dist/error.hpp"
#include "co2dist/optimize.hpp"
#include "co2dist/special.hpp"

namespace co2dist {
namespace {

double checked_sum(std::span<const double> base) {
  if (base.empty()) throw InputError("policy: empty emissions vector");
  double s = 0.0;
  for (double v : base) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError("policy: emissions must be finite and > 0");
    s += v;
  }
  return s;
}

// log sum_i exp(sigma z_i), stable for large sigma.
double log_quantile_sum(double sigma, const std::vector<double>& z) {
  const double top = sigma * z.back();
  double s = 0.0;
  for (double zi : z) s += std::exp(sigma * zi - top);
  return top + std::log(s);
}

}  // namespace

std::vector<double> plotting_scores(std::size_t n) {
  std::vector<double> z(n);
  const double np1 = static_cast<double>(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = special::normal_quantile(static_cast<double>(i + 1) / np1);
  }
  return z;
}

double compute_R(double mu, double sigma, std::span<const double> base_emissions) {
  const double total = checked_sum(base_emissions);
  if (!std::isfinite(mu)) throw InputError("policy: mu must be finite");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InputError("policy: sigma must be > 0");
  const auto z = plotting_scores(base_emissions.size());
  return std::exp(mu + log_quantile_sum(sigma, z) - std::log(total));
}

std::string_view free_parameter_name(FreeParameter p) {
  return p == FreeParameter::mu ? "mu" : "sigma";
}

std::optional<FreeParameter> parse_free_parameter(std::string_view name) {
  if (name == "mu") return FreeParameter::mu;
  if (name == "sigma") return FreeParameter::sigma;
  return std::nullopt;
}

double solve_parameter(FreeParameter free, double fixed_value, double R_target,
                       std::span<const double> base_emissions) {
  if (!(R_target > 0.0) || !std::isfinite(R_target)) throw InputError("policy: R_target must be > 0");
  const double log_total = std::log(checked_sum(base_emissions));
  const auto z = plotting_scores(base_emissions.size());
  const double log_target = std::log(R_target);

  if (free == FreeParameter::mu) {
    const double sigma = fixed_value;
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InputError("policy: fixed sigma must be > 0");
    return log_target + log_total - log_quantile_sum(sigma, z);
  }

  const double mu = fixed_value;
  if (!std::isfinite(mu)) throw InputError("policy: fixed mu must be finite");
  // log R is increasing in sigma: the scores pair up as +-z, giving cosh terms.
  auto f = [&](double s) { return mu + log_quantile_sum(s, z) - log_total - log_target; };
  double lo = 1e-6, hi = 50.0;
  double flo = f(lo), fhi = f(hi);
  for (int k = 0; k < 8 && flo > 0.0; ++k) {
    lo /= 1000.0;
    flo = f(lo);
  }
  for (int k = 0; k < 8 && fhi < 0.0; ++k) {
    hi *= 2.0;
    fhi = f(hi);
  }
  if (flo > 0.0 || fhi < 0.0) {
    std::ostringstream msg;
    msg.precision(10);
    msg << "policy: no sigma gives R = " << R_target << " with mu = " << mu
        << "; log R - log R_target is " << flo << " at sigma = " << lo << " and " << fhi
        << " at sigma = " << hi;
    throw NumericalError(msg.str());
  }
  return optimize::brent_root(f, lo, hi).root;
}

std::string_view emission_group_name(EmissionGroup g) {
  switch (g) {
    case EmissionGroup::low_emission: return "low_emission";
    case EmissionGroup::middle_emission: return "middle_emission";
    case EmissionGroup::high_emission: return "high_emission";
  }
  return "?";
}

EmissionGroup classify_target(double r, double R_target) {
  if (r > 1.0) return EmissionGroup::low_emission;
  if (r < R_target) return EmissionGroup::high_emission;
  return EmissionGroup::middle_emission;
}

std::vector<CountryTarget> allocate_targets(double mu, double sigma, double R_target,
                                            std::span<const CountryValue> reference,
                                            std::optional<std::size_t> model_n) {
  if (reference.empty()) throw InputError("policy: empty reference vector");
  if (model_n && *model_n != reference.size()) {
    throw InputError("policy: model has N = " + std::to_string(*model_n) +
                     " but the reference year has " + std::to_string(reference.size()) +
                     " countries");
  }
  if (!std::isfinite(mu)) throw InputError("policy: mu must be finite");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InputError("policy: sigma must be > 0");
  if (!(R_target > 0.0)) throw InputError("policy: R_target must be > 0");
  std::vector<CountryValue> sorted(reference.begin(), reference.end());
  for (const auto& cv : sorted) {
    if (!(cv.value > 0.0) || !std::isfinite(cv.value)) {
      throw InputError("policy: reference emission of " + cv.country + " is not > 0");
    }
  }
  std::sort(sorted.begin(), sorted.end(), [](const CountryValue& a, const CountryValue& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.country < b.country;
  });
  const std::size_t n = sorted.size();
  const auto z = plotting_scores(n);
  std::vector<CountryTarget> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& t = out[i];
    t.country = sorted[i].country;
    t.rank = n - i;
    t.reference_emissions = sorted[i].value;
    t.target_emissions = std::exp(mu + sigma * z[i]);
    t.r = t.target_emissions / t.reference_emissions;
    t.group = classify_target(t.r, R_target);
  }
  return out;
}

double inequality_index(double sigma) {
  if (!(sigma > 0.0)) throw InputError("inequality index: sigma must be > 0");
  return 0.5 * sigma * sigma;
}

double theil_index_numeric(double mu, double sigma) {
  const ParamVector p = ParamVector::lognormal(mu, sigma);
  using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
  // Work in y = log x; the size-weighted density peaks near mu + sigma^2.
  const double centre = mu + sigma * sigma;
  const double a = centre - 40.0 * sigma;
  const double b = centre + 40.0 * sigma;
  // Integrands scaled by exp(-centre) to stay finite.
  auto weighted = [&](double y) {
    if (y < -700.0 || y > 700.0) return 0.0;
    return std::exp(log_pdf(p, std::exp(y)) + 2.0 * y - centre);
  };
  const double scaled_mean = Quad::integrate(weighted, a, b, 15, 1e-14);
  const double log_mean = std::log(scaled_mean) + centre;
  auto theil = [&](double y) { return weighted(y) * (y - log_mean); };
  return Quad::integrate(theil, a, b, 15, 1e-14) / scaled_mean;
}

double inequality_change(double sigma_1, double sigma_t) {
  return inequality_index(sigma_t) - inequality_index(sigma_1);
}

}  // namespace co2dist
