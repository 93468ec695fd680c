#include "costplex/format.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "costplex/errors.hpp"

namespace costplex {

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    auto field = line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                     : comma - start);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
    fields.emplace_back(field);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_real(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != last) {
    throw ConfigError("invalid number for " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return v;
}

long long parse_int(std::string_view text, std::string_view what) {
  long long v = 0;
  const auto* last = text.data() + text.size();
  const auto res = std::from_chars(text.data(), last, v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != last) {
    throw ConfigError("invalid integer for " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace costplex
