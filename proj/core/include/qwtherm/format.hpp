#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qwtherm {

/// Shortest decimal that round-trips; "inf", "-inf" and "nan" for
/// non-finite values. Negative zero prints as "0".
std::string format_real(double value);

/// Parses a real number or a multiple of pi: "0.5", "pi/4", "3pi/4",
/// "3*pi/4", "-pi/6", "2pi", "inf".
double parse_real(std::string_view text);

/// Comma-separated list of parse_real values.
std::vector<double> parse_real_list(std::string_view text);

} // namespace qwtherm
