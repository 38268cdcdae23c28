#pragma once

#include <string>

namespace qnd::cli {

/// Shortest decimal form with at least 12 significant digits that parses
/// back to exactly `v`.
std::string format_number(double v);

}  // namespace qnd::cli
