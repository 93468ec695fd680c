#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace costplex {

// Shortest decimal that round-trips to the same double; integral values keep
// a trailing ".0" (1.0 prints as "1.0").
std::string format_real(double v);

// Splits one CSV line on commas. No quoting support; fields are numbers or
// plain identifiers in every file this toolkit reads.
std::vector<std::string> split_csv_line(std::string_view line);

// Strict number parsing; throws ConfigError naming `what` on failure.
double parse_real(std::string_view text, std::string_view what);
long long parse_int(std::string_view text, std::string_view what);

}  // namespace costplex
