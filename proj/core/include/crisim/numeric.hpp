#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace crisim {

/// Shortest decimal text that parses back to the same double.
std::string format_number(double value);

/// Parses a whole string as a double; tolerates surrounding blanks and ','
/// thousands separators. Returns nullopt for anything else.
std::optional<double> parse_number(std::string_view text);

}  // namespace crisim
