#include "canonphase/format.hpp"

#include <charconv>
#include <cstdio>

namespace canonphase {

std::string format_real(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string format_shortest(double value) {
  if (value == 0.0) value = 0.0;
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

}  // namespace canonphase
