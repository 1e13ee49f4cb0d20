#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "co2dist/panel.hpp"

namespace co2dist {

// z_i = Phi^-1(i / (N + 1)), i = 1..N.
std::vector<double> plotting_scores(std::size_t n);

// Global ratio R = sum_i exp(mu + sigma z_i) / sum_i x_i1 for the target-year
// lognormal quantiles against base-year emissions. Only the sum of the base
// vector enters. Throws InputError on an empty or non-positive base, sigma <= 0.
double compute_R(double mu, double sigma, std::span<const double> base_emissions);

enum class FreeParameter { mu, sigma };
std::string_view free_parameter_name(FreeParameter p);
std::optional<FreeParameter> parse_free_parameter(std::string_view name);

// Value of the free parameter giving compute_R == R_target, the other one held
// at `fixed_value`. mu has a closed form. sigma is found by Brent's method on
// log R over (1e-6, 50), widened geometrically when R_target lies outside;
// NumericalError reports the bracket ends when no root exists (for example
// R_target below the sigma -> 0 limit N e^mu / sum x).
double solve_parameter(FreeParameter free, double fixed_value, double R_target,
                       std::span<const double> base_emissions);

enum class EmissionGroup { low_emission, middle_emission, high_emission };
std::string_view emission_group_name(EmissionGroup g);
// low: r > 1; middle: R_target <= r <= 1; high: r < R_target.
EmissionGroup classify_target(double r, double R_target);

struct CountryTarget {
  std::string country;
  std::size_t rank = 0;  // N + 1 - i, 1 = largest emitter
  double reference_emissions = 0.0;
  double target_emissions = 0.0;  // exp(mu + sigma z_i)
  double r = 0.0;
  EmissionGroup group = EmissionGroup::middle_emission;
};

// r_i = exp(mu + sigma z_i) / x_i2 with the reference emissions sorted
// ascending (ties by country code). `model_n`, when given, must equal the
// number of reference countries. Output is in ascending order of i.
std::vector<CountryTarget> allocate_targets(double mu, double sigma, double R_target,
                                            std::span<const CountryValue> reference,
                                            std::optional<std::size_t> model_n = std::nullopt);

// Theil index (= mean log deviation) of a two-parameter lognormal: sigma^2 / 2.
double inequality_index(double sigma);

// Theil index of LOG(mu, sigma) by adaptive quadrature of the defining
// integral E[(X/m) log(X/m)], with the mean m also integrated numerically.
double theil_index_numeric(double mu, double sigma);

// T_t - T_1 for two scenarios differing in sigma.
double inequality_change(double sigma_1, double sigma_t);

}  // namespace co2dist
