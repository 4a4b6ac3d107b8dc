// SPDX-License-Identifier: Apache-2.0 WITH LLVM-exception

#pragma once

#include <string>

namespace mom {

/// Shortest plain-decimal text that reads back to exactly `v` (no exponent).
std::string formatScalar(double v);

/// Buffer entry: exact integers print without a fractional part, everything
/// else with up to 6 significant digits.
std::string formatEntry(double v);

} // namespace mom
