#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace co2dist {

enum class TrendResponse { mu, sigma };
std::string_view trend_response_name(TrendResponse response);

// parameter = alpha + beta * year + u, fitted by OLS. Both classical and
// Newey-West (Bartlett) standard errors are kept.
struct TrendModel {
  TrendResponse response = TrendResponse::mu;
  double alpha = 0.0;
  double beta = 0.0;
  double se_alpha_ols = 0.0;
  double se_beta_ols = 0.0;
  double se_alpha_hac = 0.0;
  double se_beta_hac = 0.0;
  std::size_t hac_lag = 0;
  double r_squared = 0.0;
  double f_statistic = 0.0;
  double f_p_value = 1.0;
  std::size_t n = 0;
};

// Requires n >= 3 and non-constant years. `hac_lag` defaults to
// floor(4 (n / 100)^(2/9)).
TrendModel fit_trend(std::span<const double> years, std::span<const double> values,
                     TrendResponse response, std::optional<std::size_t> hac_lag = std::nullopt);

double predict(const TrendModel& model, double year);

}  // namespace co2dist
