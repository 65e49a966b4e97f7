#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace asv::csv {

/// Shortest round-trippable text with 17 significant digits.
std::string format_double(double value);

/// Parses a floating-point field; throws DataError naming `context` on failure.
double parse_double(std::string_view field, std::string_view context = {});

std::vector<std::string> split_line(std::string_view line, char sep = ',');

std::string_view trim(std::string_view s);

/// A non-empty line with its 1-based line number.
struct Line {
    std::size_t number;
    std::string text;
};

/// Reads non-blank lines, stripping `#` comments when `strip_comments` is set.
/// Throws DataError if the file cannot be opened.
std::vector<Line> read_lines(const std::filesystem::path& path, bool strip_comments = false);

void write_row(std::ostream& os, const std::vector<std::string>& fields);

}  // namespace asv::csv
