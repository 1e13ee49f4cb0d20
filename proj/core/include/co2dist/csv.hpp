#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace co2dist::csv {

// Splits one CSV record (RFC 4180 quoting, no embedded newlines). Fields are
// returned unquoted; surrounding whitespace of unquoted fields is trimmed.
std::vector<std::string> split_line(std::string_view line);

// Quotes `field` when it contains a comma, quote or leading/trailing space.
std::string quote(std::string_view field);

// Parses a finite double spanning the whole field; nullopt otherwise.
std::optional<double> parse_double(std::string_view field);
std::optional<int> parse_int(std::string_view field);

// Shortest representation that round-trips through parse_double.
std::string format_double(double value);

}  // namespace co2dist::csv
