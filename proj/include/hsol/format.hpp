#pragma once

#include <string>
#include <vector>

namespace hsol {

// Locale-independent number formatting (always '.' as decimal separator).

/// Shortest text that reads back to the same double.
std::string format_shortest(double v);

/// Exactly 17 significant digits, printf "%.17g" style.
std::string format17(double v);

/// Comma-separated list parsed as doubles; throws std::invalid_argument.
std::vector<double> parse_number_list(const std::string& text);

}  // namespace hsol
