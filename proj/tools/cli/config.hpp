#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "co2dist/panel.hpp"
#include "co2dist/policy.hpp"

namespace co2dist::cli {

enum class Dataset { edgar, gcb, cdiac };
std::string dataset_key(Dataset d);
// Throws InputError on an unknown key.
Dataset parse_dataset(const std::string& key);

struct YearRange {
  int first = 0;
  int last = 0;
};
// "A:B" (inclusive), or a single year "A".
YearRange parse_year_range(const std::string& text);

struct RunConfig {
  std::filesystem::path input;
  Dataset dataset = Dataset::edgar;
  PanelFormat format = PanelFormat::long_format;
  std::optional<YearRange> years;
  std::uint64_t seed = 20231;
  std::vector<double> alphas = {0.05, 0.01};
  std::filesystem::path out_dir = ".";
  std::optional<std::filesystem::path> scenario;
  bool convert_carbon = false;
  bool robust = false;
  int base_year = 1990;
  std::vector<int> predict_years = {2025, 2030, 2035};
};

// "0.05,0.01" -> sorted descending, each in (0, 1).
std::vector<double> parse_alpha_list(const std::string& text);

struct Scenario {
  std::string dataset;
  int base_year = 0;
  int reference_year = 0;
  int target_year = 0;
  double R_target = 0.0;
  // The parameter held fixed; the other one is solved for.
  FreeParameter fix = FreeParameter::sigma;
  std::optional<double> fixed_value;
  bool from_trend = false;
};

// YAML mapping with keys dataset, base_year, reference_year, target_year,
// R_target, fix, and exactly one of fixed_value / from_trend: true.
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(const std::string& text);

}  // namespace co2dist::cli
