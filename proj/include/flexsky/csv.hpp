#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace flexsky::csv {

/// Shortest decimal that round-trips the double exactly.
std::string format_double(double v);

/// Strict parse of a full field; rejects trailing garbage and empty input.
bool parse_double(std::string_view text, double& out);

/// Plain comma split (ids never contain commas or quotes in this project).
std::vector<std::string_view> split(std::string_view line);

/// Strips one trailing '\r' (tolerates CRLF files).
std::string_view chomp(std::string_view line);

}  // namespace flexsky::csv
