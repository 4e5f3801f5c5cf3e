#pragma once

// Locale-independent number formatting and parsing.

#include <optional>
#include <string>
#include <string_view>

namespace latlaw {

/// Shortest decimal representation that round-trips.
std::string format_double(double x);

std::optional<double> parse_double(std::string_view text);
std::optional<unsigned long long> parse_unsigned(std::string_view text);

}  // namespace latlaw
