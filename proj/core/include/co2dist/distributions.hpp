#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace co2dist {

// The six candidate size distributions, all supported on x > 0.
enum class ModelId { exponential, fisk, gamma, lognormal, lomax, weibull };

inline constexpr std::array<ModelId, 6> kAllModels = {
    ModelId::exponential, ModelId::fisk,  ModelId::gamma,
    ModelId::lognormal,   ModelId::lomax, ModelId::weibull};

// Short codes: EXP, FSK, GAM, LOG, PA2, WEI.
std::string_view model_code(ModelId model);
std::optional<ModelId> parse_model_code(std::string_view code);
std::size_t parameter_count(ModelId model);
// Parameter names in storage order, e.g. {"mu", "sigma"} for LOG.
std::span<const std::string_view> parameter_names(ModelId model);

// Model plus its parameters in the canonical order:
//   EXP (sigma)        FSK (beta, sigma)   GAM (beta, sigma)
//   LOG (mu, sigma)    PA2 (alpha, sigma)  WEI (alpha, sigma)
// sigma is a scale everywhere; beta/alpha are shapes; mu is the log-location.
class ParamVector {
 public:
  static ParamVector exponential(double sigma);
  static ParamVector fisk(double beta, double sigma);
  static ParamVector gamma(double beta, double sigma);
  static ParamVector lognormal(double mu, double sigma);
  static ParamVector lomax(double alpha, double sigma);
  static ParamVector weibull(double alpha, double sigma);
  // Throws InputError when the count or a restriction is violated.
  static ParamVector make(ModelId model, std::span<const double> values);

  ModelId model() const { return model_; }
  std::size_t size() const { return parameter_count(model_); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return {values_.data(), size()}; }

  friend bool operator==(const ParamVector&, const ParamVector&) = default;

 private:
  ParamVector(ModelId model, double a, double b);

  ModelId model_ = ModelId::lognormal;
  std::array<double, 2> values_{};
};

// Distribution functions. `x` must be > 0 (x = 0 is accepted by cdf/survival);
// quantile requires q in (0, 1). Violations throw InputError.
double pdf(const ParamVector& p, double x);
double log_pdf(const ParamVector& p, double x);
double cdf(const ParamVector& p, double x);
double survival(const ParamVector& p, double x);
double quantile(const ParamVector& p, double q);

// Inverse-transform sampling from a 64-bit Mersenne Twister seeded with
// `seed`; one uniform per draw, so the same seed drives every model through
// the same uniform stream.
std::vector<double> sample(const ParamVector& p, std::size_t n, std::uint64_t seed);

// Uniform on the open interval (0, 1) from 53 random bits; platform-independent.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed);
  double next();
  // Standard normal via the inverse CDF.
  double next_normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace co2dist
