#pragma once

#include <filesystem>
#include <vector>

#include "cli/config.hpp"
#include "co2dist/panel.hpp"

namespace co2dist::cli {

// Reads config.input, applying the carbon conversion when requested.
EmissionsPanel load_input(const RunConfig& config);

// Panel years inside config.years (all years when unset).
std::vector<int> selected_years(const EmissionsPanel& panel, const RunConfig& config);

using Written = std::vector<std::filesystem::path>;

// table1.csv
Written cmd_summarize(const RunConfig& config);
// rank_aic.csv, rank_summary.csv
Written cmd_rank(const RunConfig& config);
// normality_pvalues.csv, normality_rejections.csv, normality_heatmap.svg
Written cmd_test(const RunConfig& config);
// table_a2.csv, gibrat_pvalues.csv, gibrat_heatmap.svg
Written cmd_gibrat(const RunConfig& config);
// lognormal_params.csv, table5.csv, table6.csv
Written cmd_trend(const RunConfig& config);
// targets.csv, policy_summary.csv, figure6.csv
Written cmd_policy(const RunConfig& config);
// qq_<year>.csv/.svg, rank_size_<year>.csv/.svg
Written cmd_plot(const RunConfig& config, int year);

struct SimulateOptions {
  std::size_t countries = 500;
  std::size_t years = 52;
  int first_year = 1970;
  double mu = 2.5;
  double sigma = 2.4;
  double shock_sd = 0.1;
};
// Synthetic proportionate-growth panel written as long CSV to `path`.
Written cmd_simulate(const SimulateOptions& options, std::uint64_t seed,
                     const std::filesystem::path& path);

// summarize, rank, test, gibrat, trend, and policy when a scenario is set.
Written cmd_pipeline(const RunConfig& config);

}  // namespace co2dist::cli
