#ifndef SCANLIB_FORMAT_HPP
#define SCANLIB_FORMAT_HPP

#include <charconv>
#include <cmath>
#include <string>

namespace scanlib {

// Locale-independent float formatting: 17 significant digits, '.' decimal,
// identical bytes for identical doubles on every run.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string format_long(long v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

} // namespace scanlib

#endif
