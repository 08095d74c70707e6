#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace spatialui::detail {

std::string_view trim(std::string_view text);
std::string lower(std::string_view text);

/// Splits on '\n', dropping a trailing '\r' from each line. A final newline
/// does not produce an extra empty line.
std::vector<std::string_view> split_lines(std::string_view text);

std::vector<std::string_view> split_whitespace(std::string_view text);

/// Whole-string finite decimal parse.
std::optional<double> parse_double(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace spatialui::detail
