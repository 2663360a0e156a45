#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace scfp {

/// Parses a real written as a decimal ("0.25", "-3e-2"), a fraction of two
/// decimals ("1/7"), or "inf" / "-inf". Throws ConfigError on anything else,
/// including trailing characters.
double parse_real(std::string_view text);

/// Shortest text that parses back to the same double; "inf" / "-inf" for infinities.
std::string format_real(double v);

/// Splits on `sep` and trims surrounding blanks from every piece.
std::vector<std::string> split_trimmed(std::string_view text, char sep);

std::string_view trim(std::string_view text);

}  // namespace scfp
