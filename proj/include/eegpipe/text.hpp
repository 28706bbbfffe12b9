#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "eegpipe/error.hpp"

namespace eegpipe {

inline std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

// Splits on delim, keeping empty fields.
inline std::vector<std::string> split(std::string_view s, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(delim, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      break;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

// Shortest decimal form that parses back to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Strict, locale-free numeric parsing: the whole (trimmed) field must consume.
inline double parse_double_field(std::string_view field,
                                 ErrorCode on_fail = ErrorCode::NonNumericField) {
  const std::string_view t = trim(field);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
    raise(on_fail, "cannot parse '" + std::string(field) + "' as a number");
  return v;
}

inline std::int64_t parse_int_field(std::string_view field,
                                    ErrorCode on_fail = ErrorCode::NonNumericField) {
  const std::string_view t = trim(field);
  std::int64_t v = 0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
    raise(on_fail, "cannot parse '" + std::string(field) + "' as an integer");
  return v;
}

}  // namespace eegpipe
