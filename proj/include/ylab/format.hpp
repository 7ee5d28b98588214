#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace ylab {

// Locale-independent float formatting with 17 significant digits.
inline std::string fmt17(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

// Shortest representation that round-trips.
inline std::string fmt_short(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace ylab
