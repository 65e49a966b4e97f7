#pragma once

#include <chrono>
#include <set>
#include <string>
#include <string_view>

namespace asv {

/// Calendar date (UTC day). Time zones are ignored throughout.
using Date = std::chrono::sys_days;

/// Parses YYYY-MM-DD; throws DataError on malformed or impossible dates.
Date parse_date(std::string_view text);
std::string format_date(Date date);

/// 0 = Sunday ... 6 = Saturday.
unsigned weekday_index(Date date);
bool is_weekend(Date date);

inline constexpr const char* kWeekdayNames[7] = {"Sunday",   "Monday", "Tuesday", "Wednesday",
                                                 "Thursday", "Friday", "Saturday"};

enum class Country { JP, CN, DE, US };

inline constexpr Country kCountries[4] = {Country::JP, Country::CN, Country::DE, Country::US};

std::string_view country_code(Country c);
std::string_view country_name(Country c);
/// Accepts JP, CN, DE, US (case-insensitive); throws DataError otherwise.
Country parse_country(std::string_view code);

/// Explicit list of holiday dates for one country.
struct HolidayCalendar {
    Country country = Country::US;
    std::set<Date> holidays;

    bool contains(Date d) const { return holidays.contains(d); }
};

/// Membership of one date in a country's pre-holiday / holiday / post-holiday classes.
struct HolidayFlags {
    bool pre = false;
    bool holiday = false;
    bool post = false;
};

/**
 * Classifies `date` against `calendar`.
 *
 * A holiday is any date in the set. Pre-holiday (post-holiday) is a non-holiday
 * date whose next (previous) day is a holiday. With `weekend_rule` set, a
 * Saturday or Sunday is never marked pre or post; it is marked holiday only if
 * it is itself in the set.
 */
HolidayFlags classify(Date date, const HolidayCalendar& calendar, bool weekend_rule = true);

}  // namespace asv
