#include "co2dist/panel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "co2dist/csv.hpp"
#include "co2dist/error.hpp"

namespace co2dist {
namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::string line_error(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

// Reads one cell: nullopt for missing (`NA`, empty, non-numeric), throws on
// a non-positive number.
std::optional<double> read_cell(const std::string& field, std::size_t line) {
  if (field.empty() || field == "NA") return std::nullopt;
  const auto value = csv::parse_double(field);
  if (!value) return std::nullopt;
  if (*value <= 0.0) {
    throw InputError(line_error(line, "emission value " + field +
                                          " is not strictly positive"));
  }
  return value;
}

void strip_bom(std::string& line) {
  if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
      static_cast<unsigned char>(line[1]) == 0xBB &&
      static_cast<unsigned char>(line[2]) == 0xBF) {
    line.erase(0, 3);
  }
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

// Accumulates (country, year) cells in first-appearance country order.
class PanelBuilder {
 public:
  void add(const std::string& country, int year, std::optional<double> value,
           std::size_t line) {
    if (country.empty()) throw InputError(line_error(line, "empty country"));
    auto [it, inserted] = country_index_.try_emplace(country, countries_.size());
    if (inserted) countries_.push_back(country);
    const auto key = std::make_pair(it->second, year);
    if (!cells_.emplace(key, value.value_or(kMissing)).second) {
      throw InputError(line_error(line, "duplicate (country, year) pair (" + country +
                                            ", " + std::to_string(year) + ")"));
    }
    years_.push_back(year);
  }

  void add_year(int year) { years_.push_back(year); }

  void add_country(const std::string& country, std::size_t line) {
    if (country.empty()) throw InputError(line_error(line, "empty country"));
    if (!country_index_.try_emplace(country, countries_.size()).second) {
      throw InputError(line_error(line, "duplicate country " + country));
    }
    countries_.push_back(country);
  }

  EmissionsPanel build() {
    std::sort(years_.begin(), years_.end());
    years_.erase(std::unique(years_.begin(), years_.end()), years_.end());
    std::vector<std::optional<double>> values(countries_.size() * years_.size());
    for (const auto& [key, v] : cells_) {
      const auto col = static_cast<std::size_t>(
          std::lower_bound(years_.begin(), years_.end(), key.second) - years_.begin());
      if (!std::isnan(v)) values[key.first * years_.size() + col] = v;
    }
    return EmissionsPanel(std::move(countries_), std::move(years_), std::move(values));
  }

 private:
  std::vector<std::string> countries_;
  std::unordered_map<std::string, std::size_t> country_index_;
  std::vector<int> years_;
  std::map<std::pair<std::size_t, int>, double> cells_;
};

EmissionsPanel read_long(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  PanelBuilder builder;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) strip_bom(line);
    if (blank(line)) continue;
    const auto fields = csv::split_line(line);
    if (!header_seen) {
      if (fields.size() != 3 || fields[0] != "country" || fields[1] != "year" ||
          fields[2] != "emissions") {
        throw InputError(line_error(line_no, "expected header country,year,emissions"));
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 3) {
      throw InputError(line_error(line_no, "expected 3 fields, got " +
                                               std::to_string(fields.size())));
    }
    const auto year = csv::parse_int(fields[1]);
    if (!year) throw InputError(line_error(line_no, "invalid year '" + fields[1] + "'"));
    builder.add(fields[0], *year, read_cell(fields[2], line_no), line_no);
  }
  if (!header_seen) throw InputError("line 1: missing header country,year,emissions");
  return builder.build();
}

EmissionsPanel read_wide(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<int> years;
  bool header_seen = false;
  PanelBuilder builder;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) strip_bom(line);
    if (blank(line)) continue;
    const auto fields = csv::split_line(line);
    if (!header_seen) {
      if (fields.size() < 2 || fields[0] != "country") {
        throw InputError(line_error(line_no, "expected header country,<year>,..."));
      }
      for (std::size_t c = 1; c < fields.size(); ++c) {
        const auto year = csv::parse_int(fields[c]);
        if (!year) {
          throw InputError(line_error(line_no, "invalid year column '" + fields[c] + "'"));
        }
        if (std::find(years.begin(), years.end(), *year) != years.end()) {
          throw InputError(line_error(line_no, "duplicate year column " + fields[c]));
        }
        years.push_back(*year);
        builder.add_year(*year);
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != years.size() + 1) {
      throw InputError(line_error(line_no, "expected " + std::to_string(years.size() + 1) +
                                               " fields, got " + std::to_string(fields.size())));
    }
    builder.add_country(fields[0], line_no);
    for (std::size_t c = 0; c < years.size(); ++c) {
      const auto cell = read_cell(fields[c + 1], line_no);
      builder.add(fields[0], years[c], cell, line_no);
    }
  }
  if (!header_seen) throw InputError("line 1: missing header country,<year>,...");
  return builder.build();
}

}  // namespace

EmissionsPanel::EmissionsPanel(std::vector<std::string> countries, std::vector<int> years,
                               std::vector<std::optional<double>> values)
    : countries_(std::move(countries)), years_(std::move(years)) {
  if (values.size() != countries_.size() * years_.size()) {
    throw InputError("panel: value matrix size does not match countries x years");
  }
  for (std::size_t i = 1; i < years_.size(); ++i) {
    if (years_[i] <= years_[i - 1]) throw InputError("panel: years must be strictly increasing");
  }
  std::vector<std::string> sorted = countries_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("panel: duplicate country identifier");
  }
  values_.reserve(values.size());
  for (const auto& v : values) {
    if (v && !(*v > 0.0 && std::isfinite(*v))) {
      throw InputError("panel: present values must be finite and strictly positive");
    }
    values_.push_back(v.value_or(kMissing));
  }
}

bool operator==(const EmissionsPanel& a, const EmissionsPanel& b) {
  if (a.countries_ != b.countries_ || a.years_ != b.years_) return false;
  return std::equal(a.values_.begin(), a.values_.end(), b.values_.begin(), b.values_.end(),
                    [](double x, double y) {
                      return (std::isnan(x) && std::isnan(y)) || x == y;
                    });
}

bool EmissionsPanel::has_year(int year) const {
  return std::binary_search(years_.begin(), years_.end(), year);
}

std::optional<std::size_t> EmissionsPanel::country_index(const std::string& country) const {
  const auto it = std::find(countries_.begin(), countries_.end(), country);
  if (it == countries_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - countries_.begin());
}

std::optional<double> EmissionsPanel::value(std::size_t country, std::size_t year_index) const {
  const double v = values_.at(country * years_.size() + year_index);
  if (std::isnan(v)) return std::nullopt;
  return v;
}

std::optional<double> EmissionsPanel::value(const std::string& country, int year) const {
  const auto c = country_index(country);
  if (!c || !has_year(year)) return std::nullopt;
  return value(*c, year_index_or_throw(year));
}

std::size_t EmissionsPanel::year_index_or_throw(int year) const {
  const auto it = std::lower_bound(years_.begin(), years_.end(), year);
  if (it == years_.end() || *it != year) {
    throw InputError("panel: year " + std::to_string(year) + " not present");
  }
  return static_cast<std::size_t>(it - years_.begin());
}

std::vector<double> EmissionsPanel::cross_section(int year) const {
  const auto col = year_index_or_throw(year);
  std::vector<double> out;
  for (std::size_t c = 0; c < countries_.size(); ++c) {
    const double v = values_[c * years_.size() + col];
    if (!std::isnan(v)) out.push_back(v);
  }
  return out;
}

std::vector<CountryValue> EmissionsPanel::labelled_cross_section(int year) const {
  const auto col = year_index_or_throw(year);
  std::vector<CountryValue> out;
  for (std::size_t c = 0; c < countries_.size(); ++c) {
    const double v = values_[c * years_.size() + col];
    if (!std::isnan(v)) out.push_back({countries_[c], v});
  }
  return out;
}

EmissionsPanel EmissionsPanel::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw InputError("panel: scale factor must be finite and positive");
  }
  EmissionsPanel out = *this;
  for (double& v : out.values_) v *= factor;  // NaN stays NaN
  return out;
}

EmissionsPanel read_panel(std::istream& in, PanelFormat format) {
  return format == PanelFormat::long_format ? read_long(in) : read_wide(in);
}

EmissionsPanel load_panel(const std::filesystem::path& path, PanelFormat format) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open panel file " + path.string());
  try {
    return read_panel(in, format);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_long_csv(const EmissionsPanel& panel, std::ostream& out) {
  out << "country,year,emissions\n";
  for (std::size_t c = 0; c < panel.country_count(); ++c) {
    for (std::size_t y = 0; y < panel.year_count(); ++y) {
      out << csv::quote(panel.countries()[c]) << ',' << panel.years()[y] << ',';
      if (const auto v = panel.value(c, y)) {
        out << csv::format_double(*v);
      } else {
        out << "NA";
      }
      out << '\n';
    }
  }
}

EmissionsPanel convert_carbon_to_co2(const EmissionsPanel& panel) {
  return panel.scaled(kCarbonToCo2);
}

YearSummary summarize_values(std::span<const double> values, int year) {
  if (values.size() < 2) {
    throw InputError("summary for year " + std::to_string(year) +
                     " needs at least 2 present values");
  }
  // Sorting makes the summary independent of country order.
  std::vector<double> x(values.begin(), values.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double sum = 0.0;
  for (double v : x) sum += v;
  const double mean = sum / n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  YearSummary s;
  s.year = year;
  s.n = x.size();
  s.min = x.front();
  s.max = x.back();
  s.mean = mean;
  s.sd = std::sqrt(m2 / (n - 1.0));
  m2 /= n;
  m3 /= n;
  m4 /= n;
  // Relative spread below rounding noise counts as all-equal.
  if (m2 > 1e-28 * mean * mean) {
    s.skewness = m3 / std::pow(m2, 1.5);
    s.kurtosis = m4 / (m2 * m2);
  }
  return s;
}

YearSummary summarize_year(const EmissionsPanel& panel, int year) {
  return summarize_values(panel.cross_section(year), year);
}

}  // namespace co2dist
