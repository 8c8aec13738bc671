#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

namespace ptsym::support {

/// Shortest decimal string that parses back to exactly the same double.
/// Non-finite values print as nan / inf / -inf.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
  char buf[32];
  const std::to_chars_result r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

inline std::string format_bool(bool v) { return v ? "true" : "false"; }

/// Quotes a CSV field only when it contains a separator, a quote, or a
/// line break; embedded quotes are doubled.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos)
    return std::string(s);
  std::string out;
  out.reserve(s.size() + 2);
  out.push_back('"');
  for (const char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace ptsym::support
