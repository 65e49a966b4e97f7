#include "asv/calendar.hpp"

#include "asv/errors.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>

namespace asv {

namespace {

bool parse_int(std::string_view s, int& out) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

Date parse_date(std::string_view text) {
    using namespace std::chrono;
    int y = 0;
    int m = 0;
    int d = 0;
    const bool shape_ok = text.size() == 10 && text[4] == '-' && text[7] == '-';
    if (!shape_ok || !parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), m) ||
        !parse_int(text.substr(8, 2), d)) {
        throw DataError("malformed date '" + std::string(text) + "' (expected YYYY-MM-DD)");
    }
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) throw DataError("invalid calendar date '" + std::string(text) + "'");
    return sys_days{ymd};
}

std::string format_date(Date date) {
    const std::chrono::year_month_day ymd{date};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

unsigned weekday_index(Date date) { return std::chrono::weekday{date}.c_encoding(); }

bool is_weekend(Date date) {
    const unsigned w = weekday_index(date);
    return w == 0 || w == 6;
}

std::string_view country_code(Country c) {
    switch (c) {
        case Country::JP: return "JP";
        case Country::CN: return "CN";
        case Country::DE: return "DE";
        case Country::US: return "US";
    }
    return "??";
}

std::string_view country_name(Country c) {
    switch (c) {
        case Country::JP: return "Japan";
        case Country::CN: return "China";
        case Country::DE: return "Germany";
        case Country::US: return "the United States";
    }
    return "??";
}

Country parse_country(std::string_view code) {
    std::string upper(code);
    for (char& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    for (Country c : kCountries) {
        if (country_code(c) == upper) return c;
    }
    throw DataError("unknown country code '" + std::string(code) + "' (expected JP, CN, DE or US)");
}

HolidayFlags classify(Date date, const HolidayCalendar& calendar, bool weekend_rule) {
    using std::chrono::days;
    HolidayFlags f;
    f.holiday = calendar.contains(date);
    if (f.holiday) return f;
    if (weekend_rule && is_weekend(date)) return f;
    f.pre = calendar.contains(date + days{1});
    f.post = calendar.contains(date - days{1});
    return f;
}

}  // namespace asv
