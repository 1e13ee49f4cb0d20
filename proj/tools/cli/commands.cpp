#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "cli/output.hpp"
#include "co2dist/csv.hpp"
#include "co2dist/error.hpp"
#include "co2dist/fit.hpp"
#include "co2dist/gibrat.hpp"
#include "co2dist/normtest.hpp"
#include "co2dist/plot.hpp"
#include "co2dist/policy.hpp"
#include "co2dist/trend.hpp"

namespace co2dist::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::filesystem::path out_path(const RunConfig& c, const std::string& name) {
  return c.out_dir / name;
}

double alpha_hi(const RunConfig& c) { return c.alphas.empty() ? 0.05 : c.alphas.front(); }
double alpha_lo(const RunConfig& c) { return c.alphas.empty() ? 0.01 : c.alphas.back(); }

struct YearFit {
  int year = 0;
  FitResult fit;
};

// Lognormal fit for every selected year with at least 3 countries.
std::vector<YearFit> lognormal_series(const EmissionsPanel& panel, const RunConfig& config) {
  std::vector<YearFit> out;
  for (int year : selected_years(panel, config)) {
    const auto x = panel.cross_section(year);
    if (x.size() < 3) continue;
    out.push_back({year, fit_mle(ModelId::lognormal, x)});
  }
  return out;
}

TrendModel trend_for(const std::vector<YearFit>& series, TrendResponse response) {
  std::vector<double> years, values;
  for (const auto& yf : series) {
    years.push_back(yf.year);
    values.push_back(response == TrendResponse::mu ? yf.fit.params[0] : yf.fit.params[1]);
  }
  return fit_trend(years, values, response);
}

}  // namespace

EmissionsPanel load_input(const RunConfig& config) {
  if (config.input.empty()) throw InputError("no --input file given");
  auto panel = load_panel(config.input, config.format);
  if (config.convert_carbon) panel = convert_carbon_to_co2(panel);
  return panel;
}

std::vector<int> selected_years(const EmissionsPanel& panel, const RunConfig& config) {
  std::vector<int> out;
  for (int y : panel.years()) {
    if (config.years && (y < config.years->first || y > config.years->last)) continue;
    out.push_back(y);
  }
  return out;
}

Written cmd_summarize(const RunConfig& config) {
  const auto panel = load_input(config);
  const std::string ds = dataset_key(config.dataset);
  std::ostringstream csv;
  csv << "dataset,year,n,max,min,mean,sd,skewness,kurtosis\n";
  for (int year : selected_years(panel, config)) {
    const auto s = summarize_year(panel, year);
    csv << ds << ',' << year << ',' << s.n << ',' << fmt_num(s.max) << ',' << fmt_num(s.min) << ','
        << fmt_num(s.mean) << ',' << fmt_num(s.sd) << ',' << fmt_num(s.skewness) << ','
        << fmt_num(s.kurtosis) << '\n';
  }
  const auto path = out_path(config, "table1.csv");
  write_file_atomic(path, csv.str());
  return {path};
}

Written cmd_rank(const RunConfig& config) {
  const auto panel = load_input(config);
  const std::string ds = dataset_key(config.dataset);
  std::ostringstream table;
  table << "dataset,year,n,model,param1,param2,loglik,aic,bic,hqc,delta,group,converged,boundary\n";
  std::map<ModelId, std::array<int, 3>> groups;
  std::map<std::string, int> criteria_agree;
  std::ostringstream best;
  best << "dataset,year,best_aic,best_bic,best_hqc\n";
  for (int year : selected_years(panel, config)) {
    const auto x = panel.cross_section(year);
    if (x.size() < 3) continue;
    const auto fits = fit_all(x);
    const auto ranking = rank_models(fits);
    for (std::size_t k = 0; k < fits.size(); ++k) {
      const auto& f = fits[k];
      const auto& r = ranking.models[k];
      table << ds << ',' << year << ',' << f.n << ',' << model_code(f.model) << ','
            << fmt_num(f.params[0]) << ',' << (f.params.size() > 1 ? fmt_num(f.params[1]) : "NA")
            << ',' << fmt_num(f.loglik) << ',' << fmt_num(f.aic) << ',' << fmt_num(f.bic) << ','
            << fmt_num(f.hqc) << ',' << fmt_num(r.delta) << ',' << support_group_name(r.group)
            << ',' << (f.converged ? 1 : 0) << ',' << (f.boundary ? 1 : 0) << '\n';
      groups[f.model][static_cast<std::size_t>(r.group)] += 1;
    }
    best << ds << ',' << year << ',' << model_code(ranking.best_aic) << ','
         << model_code(ranking.best_bic) << ',' << model_code(ranking.best_hqc) << '\n';
  }
  std::ostringstream summary;
  summary << "dataset,model,best_fit,little_support,no_support\n";
  for (ModelId m : kAllModels) {
    const auto g = groups[m];
    summary << ds << ',' << model_code(m) << ',' << g[0] << ',' << g[1] << ',' << g[2] << '\n';
  }
  Written w = {out_path(config, "rank_aic.csv"), out_path(config, "rank_summary.csv"),
               out_path(config, "rank_criteria.csv")};
  write_file_atomic(w[0], table.str());
  write_file_atomic(w[1], summary.str());
  write_file_atomic(w[2], best.str());
  return w;
}

Written cmd_test(const RunConfig& config) {
  const auto panel = load_input(config);
  const std::string ds = dataset_key(config.dataset);
  const auto years = selected_years(panel, config);
  std::ostringstream grid;
  grid << "dataset,year,n,test,statistic,p_value,class\n";
  HeatmapGrid heat;
  for (auto t : kAllNormalityTests) heat.column_labels.emplace_back(test_code(t));
  std::map<NormalityTest, std::vector<int>> rejections;
  std::map<NormalityTest, int> tested;
  for (auto t : kAllNormalityTests) rejections[t].assign(config.alphas.size(), 0);

  for (int year : years) {
    const auto x = panel.cross_section(year);
    heat.row_labels.push_back(std::to_string(year));
    for (auto t : kAllNormalityTests) {
      const auto range = valid_size_range(t);
      double stat = kNaN, p = kNaN;
      if (x.size() >= range.min && x.size() <= range.max) {
        const auto r = test_lognormality(t, x);
        stat = r.statistic;
        p = r.p_value;
        tested[t] += 1;
        for (std::size_t a = 0; a < config.alphas.size(); ++a) {
          if (p < config.alphas[a]) rejections[t][a] += 1;
        }
      }
      heat.values.push_back(p);
      grid << ds << ',' << year << ',' << x.size() << ',' << test_code(t) << ',' << fmt_num(stat)
           << ',' << fmt_num(p) << ',' << pvalue_class(p, alpha_hi(config), alpha_lo(config))
           << '\n';
    }
  }
  std::ostringstream counts;
  counts << "dataset,test,alpha,rejections,years_tested\n";
  for (auto t : kAllNormalityTests) {
    for (std::size_t a = 0; a < config.alphas.size(); ++a) {
      counts << ds << ',' << test_code(t) << ',' << fmt_num(config.alphas[a]) << ','
             << rejections[t][a] << ',' << tested[t] << '\n';
    }
  }
  std::ostringstream svg;
  write_heatmap_svg(heat, "Lognormality p-values (" + ds + ")", svg, alpha_hi(config),
                    alpha_lo(config));
  Written w = {out_path(config, "normality_pvalues.csv"),
               out_path(config, "normality_rejections.csv"),
               out_path(config, "normality_heatmap.svg")};
  write_file_atomic(w[0], grid.str());
  write_file_atomic(w[1], counts.str());
  write_file_atomic(w[2], svg.str());
  return w;
}

Written cmd_gibrat(const RunConfig& config) {
  const auto panel = load_input(config);
  const std::string ds = dataset_key(config.dataset);
  const auto years = selected_years(panel, config);
  std::ostringstream table;
  table << "period,dataset,M1,M2,M3,M4\n";
  std::ostringstream pv;
  pv << "period,dataset,method,n,alpha,beta,se_beta,null_value,t_statistic,p_value,class\n";
  HeatmapGrid heat;
  for (auto m : kAllGibratMethods) heat.column_labels.emplace_back(gibrat_method_code(m));
  GibratOptions options;
  options.robust = config.robust;

  for (std::size_t k = 0; k + 1 < years.size(); ++k) {
    const std::string period = std::to_string(years[k]) + "-" + std::to_string(years[k + 1]);
    heat.row_labels.push_back(period);
    std::optional<GrowthSample> sample;
    try {
      sample = build_growth_sample(panel, years[k], years[k + 1]);
    } catch (const InputError&) {
      // Too few paired countries: reported as NA.
    }
    table << period << ',' << ds;
    for (auto m : kAllGibratMethods) {
      if (!sample) {
        table << ",NA";
        pv << period << ',' << ds << ',' << gibrat_method_code(m) << ",0,NA,NA,NA,"
           << fmt_num(gibrat_null_value(m)) << ",NA,NA,na\n";
        heat.values.push_back(kNaN);
        continue;
      }
      const auto f = fit_gibrat(m, *sample, options);
      table << ',' << (m == GibratMethod::m1 ? fmt_fixed(f.beta, 2) : fmt_sci1(f.beta));
      pv << period << ',' << ds << ',' << gibrat_method_code(m) << ',' << f.n << ','
         << fmt_num(f.alpha) << ',' << fmt_num(f.beta) << ',' << fmt_num(f.se_beta) << ','
         << fmt_num(f.null_value) << ',' << fmt_num(f.t_statistic) << ',' << fmt_num(f.p_value)
         << ',' << pvalue_class(f.p_value, alpha_hi(config), alpha_lo(config)) << '\n';
      heat.values.push_back(f.p_value);
    }
    table << '\n';
  }
  std::ostringstream svg;
  write_heatmap_svg(heat, "Gibrat p-values (" + ds + ")", svg, alpha_hi(config), alpha_lo(config));
  Written w = {out_path(config, "table_a2.csv"), out_path(config, "gibrat_pvalues.csv"),
               out_path(config, "gibrat_heatmap.svg")};
  write_file_atomic(w[0], table.str());
  write_file_atomic(w[1], pv.str());
  write_file_atomic(w[2], svg.str());
  return w;
}

Written cmd_trend(const RunConfig& config) {
  const auto panel = load_input(config);
  const std::string ds = dataset_key(config.dataset);
  const auto series = lognormal_series(panel, config);
  std::ostringstream params;
  params << "dataset,year,n,mu,sigma,se_mu,se_sigma\n";
  for (const auto& yf : series) {
    params << ds << ',' << yf.year << ',' << yf.fit.n << ',' << fmt_num(yf.fit.params[0]) << ','
           << fmt_num(yf.fit.params[1]) << ',' << fmt_num(yf.fit.se[0]) << ','
           << fmt_num(yf.fit.se[1]) << '\n';
  }
  const auto mu = trend_for(series, TrendResponse::mu);
  const auto sigma = trend_for(series, TrendResponse::sigma);

  std::ostringstream t5;
  t5 << "term,mu,sigma\n";
  auto row = [&](const char* name, double a, double b) {
    t5 << name << ',' << fmt_num(a) << ',' << fmt_num(b) << '\n';
  };
  row("alpha", mu.alpha, sigma.alpha);
  row("se_alpha_ols", mu.se_alpha_ols, sigma.se_alpha_ols);
  row("se_alpha_hac", mu.se_alpha_hac, sigma.se_alpha_hac);
  row("beta", mu.beta, sigma.beta);
  row("se_beta_ols", mu.se_beta_ols, sigma.se_beta_ols);
  row("se_beta_hac", mu.se_beta_hac, sigma.se_beta_hac);
  row("r_squared", mu.r_squared, sigma.r_squared);
  row("f_statistic", mu.f_statistic, sigma.f_statistic);
  row("f_p_value", mu.f_p_value, sigma.f_p_value);
  t5 << "n," << mu.n << ',' << sigma.n << '\n';
  t5 << "hac_lag," << mu.hac_lag << ',' << sigma.hac_lag << '\n';

  std::optional<std::vector<double>> base;
  if (panel.has_year(config.base_year)) base = panel.cross_section(config.base_year);
  std::ostringstream t6;
  t6 << "year,mu,sigma,R\n";
  for (int year : config.predict_years) {
    const double m = predict(mu, year);
    const double s = predict(sigma, year);
    const double r = base && s > 0.0 ? compute_R(m, s, *base) : kNaN;
    t6 << year << ',' << fmt_num(m) << ',' << fmt_num(s) << ',' << fmt_num(r) << '\n';
  }
  Written w = {out_path(config, "lognormal_params.csv"), out_path(config, "table5.csv"),
               out_path(config, "table6.csv")};
  write_file_atomic(w[0], params.str());
  write_file_atomic(w[1], t5.str());
  write_file_atomic(w[2], t6.str());
  return w;
}

Written cmd_policy(const RunConfig& config) {
  if (!config.scenario) throw InputError("policy needs --scenario FILE");
  const Scenario sc = load_scenario(*config.scenario);
  if (parse_dataset(sc.dataset) != config.dataset) {
    throw InputError("scenario dataset '" + sc.dataset + "' does not match --dataset " +
                     dataset_key(config.dataset));
  }
  const auto panel = load_input(config);
  const auto base = panel.cross_section(sc.base_year);
  const auto reference = panel.labelled_cross_section(sc.reference_year);
  if (base.size() != reference.size()) {
    throw InputError("base year " + std::to_string(sc.base_year) + " has " +
                     std::to_string(base.size()) + " countries but reference year " +
                     std::to_string(sc.reference_year) + " has " +
                     std::to_string(reference.size()));
  }

  double fixed = 0.0;
  if (sc.from_trend) {
    const auto series = lognormal_series(panel, config);
    const TrendResponse resp =
        sc.fix == FreeParameter::mu ? TrendResponse::mu : TrendResponse::sigma;
    fixed = predict(trend_for(series, resp), sc.target_year);
  } else {
    fixed = *sc.fixed_value;
  }
  const FreeParameter free = sc.fix == FreeParameter::mu ? FreeParameter::sigma : FreeParameter::mu;
  const double solved = solve_parameter(free, fixed, sc.R_target, base);
  const double mu_t = free == FreeParameter::mu ? solved : fixed;
  const double sigma_t = free == FreeParameter::sigma ? solved : fixed;
  const double r_achieved = compute_R(mu_t, sigma_t, base);
  const auto targets = allocate_targets(mu_t, sigma_t, sc.R_target, reference, base.size());
  const auto base_fit = fit_mle(ModelId::lognormal, base);
  const double sigma_1 = base_fit.params[1];

  std::ostringstream tcsv;
  tcsv << "country,rank,reference_emissions,r_i,group\n";
  std::ostringstream fig;
  fig << "i,rank,r_i,R_target,group\n";
  std::array<int, 3> counts{};
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto& t = targets[i];
    tcsv << csv::quote(t.country) << ',' << t.rank << ',' << fmt_num(t.reference_emissions) << ','
         << fmt_num(t.r) << ',' << emission_group_name(t.group) << '\n';
    fig << i + 1 << ',' << t.rank << ',' << fmt_num(t.r) << ',' << fmt_num(sc.R_target) << ','
        << emission_group_name(t.group) << '\n';
    counts[static_cast<std::size_t>(t.group)] += 1;
  }
  std::ostringstream sum;
  sum << "key,value\n";
  sum << "dataset," << sc.dataset << '\n';
  sum << "base_year," << sc.base_year << '\n';
  sum << "reference_year," << sc.reference_year << '\n';
  sum << "target_year," << sc.target_year << '\n';
  sum << "N," << base.size() << '\n';
  sum << "R_target," << fmt_num(sc.R_target) << '\n';
  sum << "fixed_parameter," << free_parameter_name(sc.fix) << '\n';
  sum << "fixed_source," << (sc.from_trend ? "trend" : "value") << '\n';
  sum << "mu_t," << fmt_num(mu_t) << '\n';
  sum << "sigma_t," << fmt_num(sigma_t) << '\n';
  sum << "R_achieved," << fmt_num(r_achieved) << '\n';
  sum << "theil_t," << fmt_num(inequality_index(sigma_t)) << '\n';
  sum << "sigma_base," << fmt_num(sigma_1) << '\n';
  sum << "delta_theil," << fmt_num(inequality_change(sigma_1, sigma_t)) << '\n';
  sum << "low_emission," << counts[0] << '\n';
  sum << "middle_emission," << counts[1] << '\n';
  sum << "high_emission," << counts[2] << '\n';
  sum << "tie_break,country_code\n";

  Written w = {out_path(config, "targets.csv"), out_path(config, "policy_summary.csv"),
               out_path(config, "figure6.csv")};
  write_file_atomic(w[0], tcsv.str());
  write_file_atomic(w[1], sum.str());
  write_file_atomic(w[2], fig.str());
  return w;
}

Written cmd_plot(const RunConfig& config, int year) {
  const auto panel = load_input(config);
  const auto x = panel.cross_section(year);
  const auto qq = qq_plot_data(x);
  const auto fit = fit_mle(ModelId::lognormal, x);
  const auto rs = rank_size_plot_data(x, fit.params);
  const std::string y = std::to_string(year);
  const std::string ds = dataset_key(config.dataset);
  std::ostringstream a, b, c, d;
  write_plot_csv(qq, a);
  write_plot_svg(qq, "Q-Q plot of log emissions, " + ds + " " + y, b);
  write_plot_csv(rs, c);
  write_plot_svg(rs, "Rank-size plot, " + ds + " " + y, d);
  Written w = {out_path(config, "qq_" + y + ".csv"), out_path(config, "qq_" + y + ".svg"),
               out_path(config, "rank_size_" + y + ".csv"),
               out_path(config, "rank_size_" + y + ".svg")};
  write_file_atomic(w[0], a.str());
  write_file_atomic(w[1], b.str());
  write_file_atomic(w[2], c.str());
  write_file_atomic(w[3], d.str());
  return w;
}

Written cmd_simulate(const SimulateOptions& options, std::uint64_t seed,
                     const std::filesystem::path& path) {
  const auto panel = simulate_gibrat(options.countries, options.years,
                                     ParamVector::lognormal(options.mu, options.sigma),
                                     options.shock_sd, seed, options.first_year);
  std::ostringstream csv;
  write_long_csv(panel, csv);
  write_file_atomic(path, csv.str());
  return {path};
}

Written cmd_pipeline(const RunConfig& config) {
  Written all;
  auto add = [&](Written w) { all.insert(all.end(), w.begin(), w.end()); };
  add(cmd_summarize(config));
  add(cmd_rank(config));
  add(cmd_test(config));
  add(cmd_gibrat(config));
  add(cmd_trend(config));
  if (config.scenario) add(cmd_policy(config));
  return all;
}

}  // namespace co2dist::cli
