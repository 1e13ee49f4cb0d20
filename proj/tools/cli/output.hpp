#pragma once

#include <filesystem>
#include <optional>
#include <string>

namespace co2dist::cli {

// Writes `content` to `path` through a temporary file and a rename, so a
// failed run never leaves a truncated report behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// Shortest round-trip representation; "NA" for NaN / nullopt.
std::string fmt_num(double v);
std::string fmt_num(const std::optional<double>& v);

// Table A2 style: fixed with `decimals` digits, or one-significant-digit
// scientific ("-1e-05").
std::string fmt_fixed(double v, int decimals);
std::string fmt_sci1(double v);

}  // namespace co2dist::cli
