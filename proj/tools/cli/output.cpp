#include "cli/output.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "co2dist/csv.hpp"
#include "co2dist/error.hpp"

namespace co2dist::cli {

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw InputError("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string fmt_num(double v) {
  if (std::isnan(v)) return "NA";
  if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
  return csv::format_double(v);
}

std::string fmt_num(const std::optional<double>& v) { return v ? fmt_num(*v) : "NA"; }

std::string fmt_fixed(double v, int decimals) {
  if (std::isnan(v)) return "NA";
  return fmt::format("{:.{}f}", v, decimals);
}

std::string fmt_sci1(double v) {
  if (std::isnan(v)) return "NA";
  // printf-style exponent, at least two digits.
  return fmt::format("{:.0e}", v);
}

}  // namespace co2dist::cli
