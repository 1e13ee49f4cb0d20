#include "cli/app.hpp"

#include <ostream>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "co2dist/csv.hpp"
#include "co2dist/error.hpp"

namespace co2dist::cli {
namespace {

struct RawOptions {
  std::string input;
  std::string dataset = "edgar";
  std::string format = "long";
  std::string years;
  std::uint64_t seed = 20231;
  std::string alpha = "0.05,0.01";
  std::string out = ".";
  std::string scenario;
  bool convert_carbon = false;
  bool robust = false;
  int base_year = 1990;
  std::string predict = "2025,2030,2035";
};

void add_common(CLI::App* cmd, RawOptions& o) {
  cmd->add_option("--input", o.input, "Emissions panel CSV")->required();
  cmd->add_option("--dataset", o.dataset, "edgar | gcb | cdiac");
  cmd->add_option("--format", o.format, "long | wide");
  cmd->add_option("--years", o.years, "Inclusive year range A:B");
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--alpha", o.alpha, "Significance levels, e.g. 0.05,0.01");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_flag("--convert-carbon", o.convert_carbon, "Input is in MtC; multiply by 3.664");
}

RunConfig to_config(const RawOptions& o) {
  RunConfig c;
  c.input = o.input;
  c.dataset = parse_dataset(o.dataset);
  if (o.format == "long") {
    c.format = PanelFormat::long_format;
  } else if (o.format == "wide") {
    c.format = PanelFormat::wide_format;
  } else {
    throw InputError("unknown --format '" + o.format + "' (expected long or wide)");
  }
  if (!o.years.empty()) c.years = parse_year_range(o.years);
  c.seed = o.seed;
  c.alphas = parse_alpha_list(o.alpha);
  c.out_dir = o.out;
  if (!o.scenario.empty()) c.scenario = std::filesystem::path(o.scenario);
  c.convert_carbon = o.convert_carbon;
  c.robust = o.robust;
  c.base_year = o.base_year;
  c.predict_years.clear();
  for (const auto& field : csv::split_line(o.predict)) {
    const auto y = csv::parse_int(field);
    if (!y) throw InputError("bad --predict year '" + field + "'");
    c.predict_years.push_back(*y);
  }
  return c;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Size distributions of national CO2 emissions", "co2dist"};
  app.require_subcommand(1);
  RawOptions o;

  auto* summarize = app.add_subcommand("summarize", "Per-year descriptive statistics");
  auto* rank = app.add_subcommand("rank", "Six-model MLE fits and AIC ranking per year");
  auto* test = app.add_subcommand("test", "Seven lognormality tests per year");
  auto* gibrat = app.add_subcommand("gibrat", "Gibrat regressions M1-M4 per year pair");
  auto* trend = app.add_subcommand("trend", "Linear trends of the lognormal parameters");
  auto* policy = app.add_subcommand("policy", "National targets from a scenario file");
  auto* plot = app.add_subcommand("plot", "Q-Q and rank-size plot data for one year");
  auto* pipeline = app.add_subcommand("pipeline", "summarize, rank, test, gibrat, trend [, policy]");
  for (auto* cmd : {summarize, rank, test, gibrat, trend, policy, plot, pipeline}) {
    add_common(cmd, o);
  }
  for (auto* cmd : {gibrat, pipeline}) {
    cmd->add_flag("--robust", o.robust, "HC1 standard errors for the Gibrat tests");
  }
  for (auto* cmd : {trend, pipeline}) {
    cmd->add_option("--base-year", o.base_year, "Base year for the global ratio R");
    cmd->add_option("--predict", o.predict, "Forecast years, e.g. 2025,2030,2035");
  }
  policy->add_option("--scenario", o.scenario, "Scenario YAML file")->required();
  pipeline->add_option("--scenario", o.scenario, "Scenario YAML file");
  int plot_year = 0;
  plot->add_option("--year", plot_year, "Cross-section year")->required();

  auto* simulate = app.add_subcommand("simulate", "Write a synthetic proportionate-growth panel");
  SimulateOptions sim;
  std::string sim_output;
  std::uint64_t sim_seed = 20231;
  simulate->add_option("--output", sim_output, "Output CSV (long format)")->required();
  simulate->add_option("--countries", sim.countries, "Number of countries");
  simulate->add_option("--n-years", sim.years, "Number of years");
  simulate->add_option("--first-year", sim.first_year, "First year label");
  simulate->add_option("--mu", sim.mu, "Initial lognormal mu");
  simulate->add_option("--sigma", sim.sigma, "Initial lognormal sigma");
  simulate->add_option("--shock-sd", sim.shock_sd, "Log-shock standard deviation");
  simulate->add_option("--seed", sim_seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    Written written;
    if (simulate->parsed()) {
      written = cmd_simulate(sim, sim_seed, sim_output);
    } else {
      const RunConfig config = to_config(o);
      if (summarize->parsed()) written = cmd_summarize(config);
      if (rank->parsed()) written = cmd_rank(config);
      if (test->parsed()) written = cmd_test(config);
      if (gibrat->parsed()) written = cmd_gibrat(config);
      if (trend->parsed()) written = cmd_trend(config);
      if (policy->parsed()) written = cmd_policy(config);
      if (plot->parsed()) written = cmd_plot(config, plot_year);
      if (pipeline->parsed()) written = cmd_pipeline(config);
    }
    for (const auto& p : written) out << "wrote " << p.string() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace co2dist::cli
