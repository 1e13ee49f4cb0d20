#include "co2dist/trend.hpp"

#include "co2dist/error.hpp"
#include "co2dist/regression.hpp"

namespace co2dist {

std::string_view trend_response_name(TrendResponse response) {
  return response == TrendResponse::mu ? "mu" : "sigma";
}

TrendModel fit_trend(std::span<const double> years, std::span<const double> values,
                     TrendResponse response, std::optional<std::size_t> hac_lag) {
  if (years.size() != values.size()) throw InputError("trend: years and values differ in length");
  if (years.size() < 3) throw InputError("trend: need at least 3 years");
  bool constant = true;
  for (double y : years) constant = constant && y == years[0];
  if (constant) throw InputError("trend: year vector is constant");

  const SimpleOls ols = fit_simple_ols(years, values);
  TrendModel m;
  m.response = response;
  m.n = ols.n;
  m.alpha = ols.alpha;
  m.beta = ols.beta;
  m.se_alpha_ols = ols.se_alpha;
  m.se_beta_ols = ols.se_beta;
  m.hac_lag = hac_lag.value_or(newey_west_default_lag(ols.n));
  const auto hac = newey_west_errors(years, ols, m.hac_lag);
  m.se_alpha_hac = hac.se_alpha;
  m.se_beta_hac = hac.se_beta;
  m.r_squared = ols.r_squared;
  m.f_statistic = ols.f_statistic;
  m.f_p_value = ols.f_p_value;
  return m;
}

double predict(const TrendModel& model, double year) { return model.alpha + model.beta * year; }

}  // namespace co2dist
