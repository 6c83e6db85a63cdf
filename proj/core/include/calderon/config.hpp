#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "calderon/types.hpp"

namespace calderon {

/// Flat "key = value" settings in file order. Later entries win.
using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

/// One "key = value" per line; '#' starts a comment; blank lines ignored.
/// Throws InvalidInput naming `origin` and the line for malformed lines.
ConfigEntries parse_config(std::string_view text, std::string_view origin = "<config>");
/// Throws IoError when the file cannot be read.
ConfigEntries read_config_file(const std::string& path);

double parse_real(std::string_view text, std::string_view what);
/// Accepts "a", "bi", "a+bi", "a-bi" (also with j) and "a,b".
Complex parse_complex(std::string_view text);
/// "10,20,40" or "10 20 40".
std::vector<std::size_t> parse_ladder(std::string_view text);
/// "x y" or "x,y".
Vec2 parse_point(std::string_view text);
/// Points separated by ';'.
std::vector<Vec2> parse_points(std::string_view text);

}  // namespace calderon
