#include "asv/csv.hpp"

#include "asv/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

namespace asv::csv {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view field, std::string_view context) {
    field = trim(field);
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    if (!field.empty() && field.front() == '+') ++first;
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last || field.empty()) {
        std::string msg = "cannot parse number '" + std::string(field) + "'";
        if (!context.empty()) msg += " (" + std::string(context) + ")";
        throw DataError(msg);
    }
    return value;
}

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_line(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.emplace_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<Line> read_lines(const std::filesystem::path& path, bool strip_comments) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path.string());
    std::vector<Line> lines;
    std::string text;
    std::size_t number = 0;
    while (std::getline(in, text)) {
        ++number;
        std::string_view view = text;
        if (strip_comments) {
            const auto hash = view.find('#');
            if (hash != std::string_view::npos) view = view.substr(0, hash);
        }
        view = trim(view);
        if (!view.empty()) lines.push_back({number, std::string(view)});
    }
    return lines;
}

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << fields[i];
    }
    os << '\n';
}

}  // namespace asv::csv
