#pragma once

#include <string>
#include <string_view>

namespace cylwave {

/// Shortest-safe general form with 17 significant digits (round-trips).
std::string format_g17(double value);

/// Scientific notation with 17 significant digits, '.' decimal separator.
std::string format_sci17(double value);

double parse_double(std::string_view text, std::string_view what);
long long parse_integer(std::string_view text, std::string_view what);
bool parse_bool(std::string_view text, std::string_view what);

std::string_view trim(std::string_view text);

}  // namespace cylwave
