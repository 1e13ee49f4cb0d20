#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace co2dist {

// Mass conversion from carbon to carbon dioxide (1 kg C = 3.664 kg CO2).
inline constexpr double kCarbonToCo2 = 3.664;

enum class PanelFormat { long_format, wide_format };

// One country's value in a cross-section.
struct CountryValue {
  std::string country;
  double value = 0.0;
};

// Country x year table of emissions in MtCO2/year. Cells may be missing; every
// present cell is strictly positive. Immutable once built.
class EmissionsPanel {
 public:
  EmissionsPanel() = default;

  // `values` is row-major (country-major), countries.size() * years.size()
  // entries; std::nullopt marks a missing cell. Throws InputError when an
  // invariant is violated.
  EmissionsPanel(std::vector<std::string> countries, std::vector<int> years,
                 std::vector<std::optional<double>> values);

  const std::vector<std::string>& countries() const { return countries_; }
  const std::vector<int>& years() const { return years_; }
  std::size_t country_count() const { return countries_.size(); }
  std::size_t year_count() const { return years_.size(); }
  bool empty() const { return countries_.empty() || years_.empty(); }

  bool has_year(int year) const;
  std::optional<std::size_t> country_index(const std::string& country) const;
  std::optional<double> value(std::size_t country, std::size_t year_index) const;
  std::optional<double> value(const std::string& country, int year) const;

  // Present values for `year`, in country order. Throws on unknown year.
  std::vector<double> cross_section(int year) const;
  std::vector<CountryValue> labelled_cross_section(int year) const;

  // Multiplies every present value by `factor` (> 0).
  EmissionsPanel scaled(double factor) const;

  // Missing cells compare equal to each other.
  friend bool operator==(const EmissionsPanel& a, const EmissionsPanel& b);

 private:
  std::size_t year_index_or_throw(int year) const;

  std::vector<std::string> countries_;
  std::vector<int> years_;
  std::vector<double> values_;  // NaN marks a missing cell
};

// Parses a long (`country,year,emissions`) or wide (`country,<year>,...`) CSV.
// `NA`, empty and non-numeric cells become missing. Zero or negative values,
// duplicate (country, year) pairs and malformed headers are rejected with the
// offending line number.
EmissionsPanel read_panel(std::istream& in, PanelFormat format);
EmissionsPanel load_panel(const std::filesystem::path& path, PanelFormat format);

// Writes the canonical long format. Missing cells are written as `NA` so that
// read_panel(write_long_csv(p)) == p.
void write_long_csv(const EmissionsPanel& panel, std::ostream& out);

// Input in MtC/year -> MtCO2/year.
EmissionsPanel convert_carbon_to_co2(const EmissionsPanel& panel);

struct YearSummary {
  int year = 0;
  std::size_t n = 0;
  double max = 0.0;
  double min = 0.0;
  double mean = 0.0;
  double sd = 0.0;  // sample (n - 1) standard deviation
  // Moment ratios m3/m2^1.5 and m4/m2^2 (non-excess) with divide-by-n central
  // moments; undefined when every value is equal.
  std::optional<double> skewness;
  std::optional<double> kurtosis;
};

YearSummary summarize_values(std::span<const double> values, int year = 0);
YearSummary summarize_year(const EmissionsPanel& panel, int year);

}  // namespace co2dist
