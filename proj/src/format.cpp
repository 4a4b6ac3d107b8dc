// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#include "mom/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace mom {

std::string formatScalar(double v) {
  char buf[400];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  return std::string(buf, res.ptr);
}

std::string formatEntry(double v) {
  if (v == 0.0)
    return "0"; // also folds -0
  char buf[64];
  if (std::isfinite(v) && v == std::trunc(v) && std::fabs(v) < 9.0e15)
    std::snprintf(buf, sizeof buf, "%.0f", v);
  else
    std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

} // namespace mom
