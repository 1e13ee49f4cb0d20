#include "co2dist/gibrat.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "co2dist/error.hpp"
#include "co2dist/regression.hpp"
#include "co2dist/special.hpp"

namespace co2dist {

GrowthSample build_growth_sample(const EmissionsPanel& panel, int year_from, int year_to) {
  if (!panel.has_year(year_from)) throw InputError("unknown year " + std::to_string(year_from));
  if (!panel.has_year(year_to)) throw InputError("unknown year " + std::to_string(year_to));
  GrowthSample s;
  s.year_from = year_from;
  s.year_to = year_to;
  for (const auto& country : panel.countries()) {
    const auto a = panel.value(country, year_from);
    const auto b = panel.value(country, year_to);
    if (!a || !b) continue;
    s.countries.push_back(country);
    s.previous.push_back(*a);
    s.current.push_back(*b);
  }
  if (s.size() < 3) {
    throw InputError("growth sample " + std::to_string(year_from) + "->" +
                     std::to_string(year_to) + " has " + std::to_string(s.size()) +
                     " paired countries; need at least 3");
  }
  return s;
}

std::string_view gibrat_method_code(GibratMethod method) {
  switch (method) {
    case GibratMethod::m1: return "M1";
    case GibratMethod::m2: return "M2";
    case GibratMethod::m3: return "M3";
    case GibratMethod::m4: return "M4";
  }
  return "?";
}

std::optional<GibratMethod> parse_gibrat_method(std::string_view code) {
  for (auto m : kAllGibratMethods) {
    if (gibrat_method_code(m) == code) return m;
  }
  return std::nullopt;
}

double gibrat_null_value(GibratMethod method) { return method == GibratMethod::m1 ? 1.0 : 0.0; }

GibratFit fit_gibrat(GibratMethod method, const GrowthSample& sample,
                     const GibratOptions& options) {
  const std::size_t n = sample.size();
  if (n < 3) throw InputError("gibrat: need at least 3 pairs");
  if (sample.previous.size() != n || sample.current.size() != n) {
    throw InputError("gibrat: inconsistent growth sample");
  }
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = sample.previous[i];
    const double cur = sample.current[i];
    if (!(prev > 0.0) || !(cur > 0.0)) throw InputError("gibrat: sizes must be strictly positive");
    switch (method) {
      case GibratMethod::m1:
        x[i] = std::log(prev);
        y[i] = std::log(cur);
        break;
      case GibratMethod::m2:
        x[i] = 0.5 * (cur + prev);
        y[i] = cur / prev;
        break;
      case GibratMethod::m3:
        x[i] = prev;
        y[i] = cur / prev;
        break;
      case GibratMethod::m4:
        x[i] = prev;
        y[i] = std::log(cur / prev);
        break;
    }
  }
  const SimpleOls ols = fit_simple_ols(x, y);

  GibratFit fit;
  fit.method = method;
  fit.n = n;
  fit.alpha = ols.alpha;
  fit.beta = ols.beta;
  fit.null_value = gibrat_null_value(method);
  if (options.robust) {
    const auto e = hc_errors(x, ols, HcType::hc1);
    fit.se_alpha = e.se_alpha;
    fit.se_beta = e.se_beta;
  } else {
    fit.se_alpha = ols.se_alpha;
    fit.se_beta = ols.se_beta;
  }
  const double diff = fit.beta - fit.null_value;
  if (fit.se_beta > 0.0) {
    fit.t_statistic = diff / fit.se_beta;
    fit.p_value = special::student_t_two_sided_p(fit.t_statistic, static_cast<double>(n - 2));
  } else {
    fit.t_statistic = diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
    fit.p_value = diff == 0.0 ? 1.0 : 0.0;
  }
  return fit;
}

EmissionsPanel simulate_gibrat(std::size_t n_countries, std::size_t n_years,
                               const ParamVector& initial, double shock_sd, std::uint64_t seed,
                               int first_year) {
  if (n_countries < 1) throw InputError("simulate_gibrat: need at least one country");
  if (n_years < 2) throw InputError("simulate_gibrat: need at least 2 years");
  if (!(shock_sd >= 0.0) || !std::isfinite(shock_sd)) {
    throw InputError("simulate_gibrat: shock_sd must be finite and >= 0");
  }
  std::vector<std::string> countries(n_countries);
  for (std::size_t i = 0; i < n_countries; ++i) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "C%04zu", i + 1);
    countries[i] = buf;
  }
  std::vector<int> years(n_years);
  for (std::size_t t = 0; t < n_years; ++t) years[t] = first_year + static_cast<int>(t);

  UniformStream stream(seed);
  // Country-major storage; log sizes advanced year by year.
  std::vector<double> log_size(n_countries);
  for (auto& v : log_size) v = std::log(quantile(initial, stream.next()));
  std::vector<std::optional<double>> values(n_countries * n_years);
  for (std::size_t t = 0; t < n_years; ++t) {
    for (std::size_t i = 0; i < n_countries; ++i) {
      if (t > 0) log_size[i] += shock_sd * stream.next_normal();
      values[i * n_years + t] = std::exp(log_size[i]);
    }
  }
  return EmissionsPanel(std::move(countries), std::move(years), std::move(values));
}

}  // namespace co2dist
