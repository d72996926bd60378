#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace sheetcomp {

// Format code of a built-in OOXML numFmtId (0-49), nullopt for unknown ids.
// Id 0 is "General".
std::optional<std::string> builtin_number_format(int id);

// Renders a stored number with a format code. Covers the common cases:
// grouping, fixed decimals, percent, scientific, currency literals, and
// date/time codes over 1900-system serials. Unsupported constructs fall back
// to the shortest round-trip rendering of the value.
std::string format_number(double value, std::string_view code);

// Shortest decimal rendering, trimming trailing zeros ("1234.5", "7").
std::string general_number(double value);

}  // namespace sheetcomp
