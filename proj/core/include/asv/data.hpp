#pragma once

#include "asv/calendar.hpp"
#include "asv/model.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace asv {

/// Daily closing prices on consecutive calendar days.
struct PriceSeries {
    std::vector<Date> dates;
    std::vector<double> prices;

    /// Throws DataError on gaps, duplicate dates or non-positive prices.
    void validate() const;
};

struct DescriptiveStats {
    std::size_t obs = 0;
    double mean = 0.0;
    double sd = 0.0;  ///< denominator n - 1
    double min = 0.0;
    double max = 0.0;
    double skew = 0.0;
    double kurt = 0.0;  ///< excess kurtosis
};

/// Percent log returns 100 * (ln P_t - ln P_{t-1}); one shorter than the input.
std::vector<double> compute_returns(const PriceSeries& series);

/// Inverse of compute_returns: prices starting at `initial_price` on `start`.
PriceSeries prices_from_returns(std::span<const double> returns, Date start, double initial_price = 100.0);

DescriptiveStats descriptive_stats(std::span<const double> values);

struct DesignOptions {
    /// Weekends carry pre/post-holiday indicators only when they are holidays themselves.
    bool weekend_rule = true;
};

struct DesignMatrix {
    MatrixXd values;
    std::vector<std::string> labels;
    std::vector<Date> dates;
};

/// Column labels of the 19-column calendar design, in order.
std::vector<std::string> calendar_design_labels();

/**
 * Builds the calendar design: constant; Sunday, Monday, Tuesday, Thursday,
 * Friday, Saturday indicators (Wednesday is the baseline); then pre-holiday,
 * holiday and post-holiday indicators for JP, CN, DE, US.
 *
 * `calendars` must contain exactly one calendar for each of the four
 * countries, in any order. `dates` must be consecutive days.
 */
DesignMatrix build_design_matrix(std::span<const Date> dates, std::span<const HolidayCalendar> calendars,
                                 const DesignOptions& options = {});

/// Constant-only design (k = 1).
DesignMatrix build_constant_design(std::span<const Date> dates);

struct ReturnGroup {
    std::string name;
    std::vector<double> values;
};

/// Seven groups, Sunday first. `dates[i]` is the date of `returns[i]`.
std::vector<ReturnGroup> slice_by_weekday(std::span<const double> returns, std::span<const Date> dates);

/// Twelve groups: pre-holiday, holiday, post-holiday, each for JP, CN, DE, US.
std::vector<ReturnGroup> slice_by_holiday_class(std::span<const double> returns, std::span<const Date> dates,
                                                std::span<const HolidayCalendar> calendars,
                                                const DesignOptions& options = {});

/// Returns paired with a design: `dates` has T+1 entries, the last being the day after the final return.
struct IngestedData {
    Dataset dataset;
    std::vector<Date> dates;
};

/// Return dates followed by one trailing day.
std::vector<Date> design_dates_for(const PriceSeries& series);

IngestedData assemble_dataset(const PriceSeries& series, std::span<const HolidayCalendar> calendars,
                              const DesignOptions& options = {});
IngestedData assemble_constant_dataset(const PriceSeries& series);

// File formats.

/// CSV with header `date,close`.
PriceSeries read_price_csv(const std::filesystem::path& path);
void write_price_csv(const std::filesystem::path& path, const PriceSeries& series);

/// One ISO-8601 date per line; `#` starts a comment.
HolidayCalendar read_holiday_file(const std::filesystem::path& path, Country country);
void write_holiday_file(const std::filesystem::path& path, const HolidayCalendar& calendar);

/// `date,<labels...>` with one row per design row.
void write_design_csv(const std::filesystem::path& path, const DesignMatrix& design);

}  // namespace asv
