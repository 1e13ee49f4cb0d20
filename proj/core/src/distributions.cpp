#include "co2dist/distributions.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "co2dist/error.hpp"
#include "co2dist/special.hpp"

namespace co2dist {
namespace {

constexpr std::array<std::string_view, 1> kExpNames = {"sigma"};
constexpr std::array<std::string_view, 2> kFskNames = {"beta", "sigma"};
constexpr std::array<std::string_view, 2> kGamNames = {"beta", "sigma"};
constexpr std::array<std::string_view, 2> kLogNames = {"mu", "sigma"};
constexpr std::array<std::string_view, 2> kPa2Names = {"alpha", "sigma"};
constexpr std::array<std::string_view, 2> kWeiNames = {"alpha", "sigma"};

void require_positive_x(double x) {
  if (!(x > 0.0) || std::isnan(x)) throw InputError("x must be strictly positive");
}

void require_nonnegative_x(double x) {
  if (!(x >= 0.0) || std::isnan(x)) throw InputError("x must be non-negative");
}

void require_positive_param(double v, std::string_view name, ModelId model) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InputError(std::string(model_code(model)) + ": parameter " + std::string(name) +
                     " must be finite and > 0");
  }
}

// log(1 + e^t) without overflow.
double softplus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

// Inverse of the regularized lower incomplete gamma in its second argument,
// by Newton steps kept inside a bracket that shrinks on every evaluation.
double gamma_standard_quantile(double shape, double q) {
  const bool upper = q > 0.5;
  const double target = upper ? 1.0 - q : q;
  // f is increasing in y in both formulations.
  auto f = [&](double y) {
    return upper ? target - special::gamma_q(shape, y) : special::gamma_p(shape, y) - target;
  };
  const double log_norm = std::lgamma(shape);
  auto density = [&](double y) { return std::exp((shape - 1.0) * std::log(y) - y - log_norm); };

  // Wilson-Hilferty start, with the small-y power law as a fallback.
  const double z = special::normal_quantile(q);
  const double c = 1.0 / (9.0 * shape);
  double y = shape * std::pow(1.0 - c + z * std::sqrt(c), 3.0);
  if (!(y > 0.0) || !std::isfinite(y)) {
    y = std::exp((std::log(q) + std::lgamma(shape + 1.0)) / shape);
  }
  if (!(y > 0.0)) y = std::numeric_limits<double>::min();

  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 200; ++iter) {
    const double fy = f(y);
    if (fy == 0.0) return y;
    if (fy < 0.0) {
      lo = y;
    } else {
      hi = y;
    }
    const double dens = density(y);
    double next = dens > 0.0 ? y - fy / dens : std::numeric_limits<double>::quiet_NaN();
    if (!(next > lo && next < hi)) {
      next = std::isinf(hi) ? 2.0 * y + 1.0 : 0.5 * (lo + hi);
    }
    if (std::fabs(next - y) <= 4.0 * std::numeric_limits<double>::epsilon() * y) return next;
    if (!std::isinf(hi) && hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      return 0.5 * (lo + hi);
    }
    y = next;
  }
  return y;
}

}  // namespace

std::string_view model_code(ModelId model) {
  switch (model) {
    case ModelId::exponential: return "EXP";
    case ModelId::fisk: return "FSK";
    case ModelId::gamma: return "GAM";
    case ModelId::lognormal: return "LOG";
    case ModelId::lomax: return "PA2";
    case ModelId::weibull: return "WEI";
  }
  return "?";
}

std::optional<ModelId> parse_model_code(std::string_view code) {
  for (ModelId m : kAllModels) {
    if (model_code(m) == code) return m;
  }
  return std::nullopt;
}

std::size_t parameter_count(ModelId model) { return model == ModelId::exponential ? 1 : 2; }

std::span<const std::string_view> parameter_names(ModelId model) {
  switch (model) {
    case ModelId::exponential: return kExpNames;
    case ModelId::fisk: return kFskNames;
    case ModelId::gamma: return kGamNames;
    case ModelId::lognormal: return kLogNames;
    case ModelId::lomax: return kPa2Names;
    case ModelId::weibull: return kWeiNames;
  }
  return {};
}

ParamVector::ParamVector(ModelId model, double a, double b) : model_(model), values_{a, b} {
  if (model == ModelId::lognormal) {
    if (!std::isfinite(a)) throw InputError("LOG: parameter mu must be finite");
    require_positive_param(b, "sigma", model);
    return;
  }
  const auto names = parameter_names(model);
  require_positive_param(a, names[0], model);
  if (model != ModelId::exponential) require_positive_param(b, names[1], model);
}

ParamVector ParamVector::exponential(double sigma) {
  return ParamVector(ModelId::exponential, sigma, 0.0);
}
ParamVector ParamVector::fisk(double beta, double sigma) {
  return ParamVector(ModelId::fisk, beta, sigma);
}
ParamVector ParamVector::gamma(double beta, double sigma) {
  return ParamVector(ModelId::gamma, beta, sigma);
}
ParamVector ParamVector::lognormal(double mu, double sigma) {
  return ParamVector(ModelId::lognormal, mu, sigma);
}
ParamVector ParamVector::lomax(double alpha, double sigma) {
  return ParamVector(ModelId::lomax, alpha, sigma);
}
ParamVector ParamVector::weibull(double alpha, double sigma) {
  return ParamVector(ModelId::weibull, alpha, sigma);
}

ParamVector ParamVector::make(ModelId model, std::span<const double> values) {
  if (values.size() != parameter_count(model)) {
    throw InputError(std::string(model_code(model)) + ": expected " +
                     std::to_string(parameter_count(model)) + " parameters, got " +
                     std::to_string(values.size()));
  }
  return ParamVector(model, values[0], values.size() > 1 ? values[1] : 0.0);
}

double log_pdf(const ParamVector& p, double x) {
  require_positive_x(x);
  switch (p.model()) {
    case ModelId::exponential: {
      const double s = p[0];
      return -std::log(s) - x / s;
    }
    case ModelId::fisk: {
      const double b = p[0], s = p[1];
      const double lz = std::log(x / s);
      return std::log(b / s) + (b - 1.0) * lz - 2.0 * softplus(b * lz);
    }
    case ModelId::gamma: {
      const double b = p[0], s = p[1];
      return -std::lgamma(b) - std::log(s) + (b - 1.0) * std::log(x / s) - x / s;
    }
    case ModelId::lognormal: {
      const double mu = p[0], s = p[1];
      const double lx = std::log(x);
      const double z = (lx - mu) / s;
      return -lx - std::log(s) - special::kLogSqrt2Pi - 0.5 * z * z;
    }
    case ModelId::lomax: {
      const double a = p[0], s = p[1];
      return std::log(a / s) - (a + 1.0) * std::log1p(x / s);
    }
    case ModelId::weibull: {
      const double a = p[0], s = p[1];
      const double lz = std::log(x / s);
      return std::log(a / s) + (a - 1.0) * lz - std::exp(a * lz);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double pdf(const ParamVector& p, double x) { return std::exp(log_pdf(p, x)); }

double cdf(const ParamVector& p, double x) {
  require_nonnegative_x(x);
  if (x == 0.0) return 0.0;
  switch (p.model()) {
    case ModelId::exponential: return -std::expm1(-x / p[0]);
    case ModelId::fisk: return 1.0 / (1.0 + std::pow(x / p[1], -p[0]));
    case ModelId::gamma: return special::gamma_p(p[0], x / p[1]);
    case ModelId::lognormal: return special::normal_cdf((std::log(x) - p[0]) / p[1]);
    case ModelId::lomax: return -std::expm1(-p[0] * std::log1p(x / p[1]));
    case ModelId::weibull: return -std::expm1(-std::pow(x / p[1], p[0]));
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double survival(const ParamVector& p, double x) {
  require_nonnegative_x(x);
  if (x == 0.0) return 1.0;
  switch (p.model()) {
    case ModelId::exponential: return std::exp(-x / p[0]);
    case ModelId::fisk: return 1.0 / (1.0 + std::pow(x / p[1], p[0]));
    case ModelId::gamma: return special::gamma_q(p[0], x / p[1]);
    case ModelId::lognormal: return special::normal_sf((std::log(x) - p[0]) / p[1]);
    case ModelId::lomax: return std::exp(-p[0] * std::log1p(x / p[1]));
    case ModelId::weibull: return std::exp(-std::pow(x / p[1], p[0]));
  }
  return std::numeric_limits<double>::quiet_NaN();
}

double quantile(const ParamVector& p, double q) {
  if (!(q > 0.0 && q < 1.0)) throw InputError("quantile: probability must lie in (0, 1)");
  switch (p.model()) {
    case ModelId::exponential: return -p[0] * std::log1p(-q);
    case ModelId::fisk: return p[1] * std::exp((std::log(q) - std::log1p(-q)) / p[0]);
    case ModelId::gamma: return p[1] * gamma_standard_quantile(p[0], q);
    case ModelId::lognormal: return std::exp(p[0] + p[1] * special::normal_quantile(q));
    case ModelId::lomax: return p[1] * std::expm1(-std::log1p(-q) / p[0]);
    case ModelId::weibull: return p[1] * std::pow(-std::log1p(-q), 1.0 / p[0]);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

std::vector<double> sample(const ParamVector& p, std::size_t n, std::uint64_t seed) {
  UniformStream stream(seed);
  std::vector<double> out(n);
  for (double& x : out) x = quantile(p, stream.next());
  return out;
}

UniformStream::UniformStream(std::uint64_t seed) : engine_(seed) {}

double UniformStream::next() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double UniformStream::next_normal() { return special::normal_quantile(next()); }

}  // namespace co2dist
