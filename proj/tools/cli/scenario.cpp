#include <algorithm>
#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "cli/config.hpp"
#include "co2dist/csv.hpp"
#include "co2dist/error.hpp"

namespace co2dist::cli {

std::string dataset_key(Dataset d) {
  switch (d) {
    case Dataset::edgar: return "edgar";
    case Dataset::gcb: return "gcb";
    case Dataset::cdiac: return "cdiac";
  }
  return "?";
}

Dataset parse_dataset(const std::string& key) {
  if (key == "edgar") return Dataset::edgar;
  if (key == "gcb") return Dataset::gcb;
  if (key == "cdiac") return Dataset::cdiac;
  throw InputError("unknown dataset '" + key + "' (expected edgar, gcb or cdiac)");
}

YearRange parse_year_range(const std::string& text) {
  const auto colon = text.find(':');
  const auto first = csv::parse_int(text.substr(0, colon));
  const auto last = colon == std::string::npos ? first : csv::parse_int(text.substr(colon + 1));
  if (!first || !last) throw InputError("bad year range '" + text + "' (expected A:B)");
  if (*first > *last) throw InputError("year range '" + text + "' is reversed");
  return {*first, *last};
}

std::vector<double> parse_alpha_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& field : csv::split_line(text)) {
    const auto v = csv::parse_double(field);
    if (!v || !(*v > 0.0 && *v < 1.0)) throw InputError("bad significance level '" + field + "'");
    out.push_back(*v);
  }
  if (out.empty()) throw InputError("empty --alpha list");
  std::sort(out.begin(), out.end(), std::greater<>());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Scenario parse_scenario(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw InputError(std::string("scenario: ") + e.what());
  }
  if (!root.IsMap()) throw InputError("scenario: expected a mapping of keys");
  for (const auto& kv : root) {
    static const char* known[] = {"dataset",  "base_year", "reference_year", "target_year",
                                  "R_target", "fix",       "fixed_value",    "from_trend"};
    const auto key = kv.first.as<std::string>();
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw InputError("scenario: unknown key '" + key + "'");
    }
  }
  auto required = [&](const char* key) {
    if (!root[key]) throw InputError(std::string("scenario: missing key '") + key + "'");
    return root[key];
  };
  Scenario s;
  try {
    s.dataset = required("dataset").as<std::string>();
    s.base_year = required("base_year").as<int>();
    s.reference_year = required("reference_year").as<int>();
    s.target_year = required("target_year").as<int>();
    s.R_target = required("R_target").as<double>();
    const auto fix = parse_free_parameter(required("fix").as<std::string>());
    if (!fix) throw InputError("scenario: fix must be 'mu' or 'sigma'");
    s.fix = *fix;
    if (root["fixed_value"]) s.fixed_value = root["fixed_value"].as<double>();
    if (root["from_trend"]) s.from_trend = root["from_trend"].as<bool>();
  } catch (const YAML::Exception& e) {
    throw InputError(std::string("scenario: ") + e.what());
  }
  parse_dataset(s.dataset);
  if (s.fixed_value.has_value() == s.from_trend) {
    throw InputError("scenario: give exactly one of fixed_value or from_trend: true");
  }
  if (!(s.R_target > 0.0)) throw InputError("scenario: R_target must be > 0");
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

}  // namespace co2dist::cli
