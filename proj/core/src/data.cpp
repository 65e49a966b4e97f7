#include "asv/data.hpp"

#include "asv/csv.hpp"
#include "asv/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>

namespace asv {

namespace {

using std::chrono::days;

// Design column of each weekday (0 = Sunday); Wednesday has none.
constexpr std::array<int, 7> kWeekdayColumn = {1, 2, 3, -1, 4, 5, 6};
constexpr Index kHolidayBlock = 7;
constexpr Index kNumCalendarColumns = 19;

void require_consecutive(std::span<const Date> dates, const char* what) {
    for (std::size_t i = 1; i < dates.size(); ++i) {
        if (dates[i] - dates[i - 1] != days{1}) {
            throw DataError(std::string(what) + ": dates must be consecutive days; gap or disorder at " +
                            format_date(dates[i]));
        }
    }
}

// Calendars ordered JP, CN, DE, US.
std::array<const HolidayCalendar*, 4> order_calendars(std::span<const HolidayCalendar> calendars) {
    if (calendars.size() != 4) {
        throw DataError("expected holiday calendars for exactly JP, CN, DE and US, got " +
                        std::to_string(calendars.size()));
    }
    std::array<const HolidayCalendar*, 4> ordered{};
    for (const auto& cal : calendars) {
        auto& slot = ordered[static_cast<std::size_t>(cal.country)];
        if (slot != nullptr) {
            throw DataError("duplicate holiday calendar for " + std::string(country_code(cal.country)));
        }
        slot = &cal;
    }
    return ordered;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write file: " + path.string());
    return out;
}

}  // namespace

void PriceSeries::validate() const {
    if (dates.size() != prices.size()) throw DataError("price series: dates and prices differ in length");
    require_consecutive(dates, "price series");
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (!(prices[i] > 0.0) || !std::isfinite(prices[i])) {
            throw DataError("non-positive or non-finite price on " + format_date(dates[i]));
        }
    }
}

std::vector<double> compute_returns(const PriceSeries& series) {
    series.validate();
    if (series.prices.size() < 2) throw DataError("need at least two prices to compute returns");
    std::vector<double> out(series.prices.size() - 1);
    for (std::size_t t = 1; t < series.prices.size(); ++t) {
        out[t - 1] = 100.0 * (std::log(series.prices[t]) - std::log(series.prices[t - 1]));
    }
    return out;
}

PriceSeries prices_from_returns(std::span<const double> returns, Date start, double initial_price) {
    PriceSeries series;
    series.dates.reserve(returns.size() + 1);
    series.prices.reserve(returns.size() + 1);
    series.dates.push_back(start);
    series.prices.push_back(initial_price);
    double log_price = std::log(initial_price);
    for (std::size_t t = 0; t < returns.size(); ++t) {
        log_price += returns[t] / 100.0;
        series.dates.push_back(start + days{static_cast<int>(t + 1)});
        series.prices.push_back(std::exp(log_price));
    }
    return series;
}

DescriptiveStats descriptive_stats(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2) throw DataError("descriptive statistics need at least two values");
    DescriptiveStats s;
    s.obs = n;
    double sum = 0.0;
    s.min = values[0];
    s.max = values[0];
    for (double v : values) {
        sum += v;
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
    }
    const double nd = static_cast<double>(n);
    s.mean = sum / nd;
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (double v : values) {
        const double d = v - s.mean;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    s.sd = std::sqrt(m2 / (nd - 1.0));
    m2 /= nd;
    m3 /= nd;
    m4 /= nd;
    if (m2 > 0.0) {
        s.skew = m3 / std::pow(m2, 1.5);
        s.kurt = m4 / (m2 * m2) - 3.0;
    } else {
        s.skew = std::numeric_limits<double>::quiet_NaN();
        s.kurt = std::numeric_limits<double>::quiet_NaN();
    }
    return s;
}

std::vector<std::string> calendar_design_labels() {
    std::vector<std::string> labels = {"const", "Sun", "Mon", "Tue", "Thu", "Fri", "Sat"};
    for (const char* cls : {"pre", "hol", "post"}) {
        for (Country c : kCountries) labels.push_back(std::string(cls) + "_" + std::string(country_code(c)));
    }
    return labels;
}

DesignMatrix build_design_matrix(std::span<const Date> dates, std::span<const HolidayCalendar> calendars,
                                 const DesignOptions& options) {
    const auto ordered = order_calendars(calendars);
    require_consecutive(dates, "design matrix");
    const Index rows = static_cast<Index>(dates.size());

    DesignMatrix out;
    out.labels = calendar_design_labels();
    out.dates.assign(dates.begin(), dates.end());
    out.values = MatrixXd::Zero(rows, kNumCalendarColumns);
    out.values.col(0).setOnes();
    for (Index r = 0; r < rows; ++r) {
        const Date d = dates[static_cast<std::size_t>(r)];
        const int wcol = kWeekdayColumn[weekday_index(d)];
        if (wcol > 0) out.values(r, wcol) = 1.0;
        for (std::size_t c = 0; c < 4; ++c) {
            const HolidayFlags f = classify(d, *ordered[c], options.weekend_rule);
            const auto col = static_cast<Index>(c);
            if (f.pre) out.values(r, kHolidayBlock + col) = 1.0;
            if (f.holiday) out.values(r, kHolidayBlock + 4 + col) = 1.0;
            if (f.post) out.values(r, kHolidayBlock + 8 + col) = 1.0;
        }
    }
    return out;
}

DesignMatrix build_constant_design(std::span<const Date> dates) {
    require_consecutive(dates, "design matrix");
    DesignMatrix out;
    out.labels = {"const"};
    out.dates.assign(dates.begin(), dates.end());
    out.values = MatrixXd::Ones(static_cast<Index>(dates.size()), 1);
    return out;
}

std::vector<ReturnGroup> slice_by_weekday(std::span<const double> returns, std::span<const Date> dates) {
    if (dates.size() < returns.size()) throw DataError("fewer dates than returns");
    std::vector<ReturnGroup> groups;
    for (const char* name : kWeekdayNames) groups.push_back({name, {}});
    for (std::size_t i = 0; i < returns.size(); ++i) {
        groups[weekday_index(dates[i])].values.push_back(returns[i]);
    }
    return groups;
}

std::vector<ReturnGroup> slice_by_holiday_class(std::span<const double> returns, std::span<const Date> dates,
                                                std::span<const HolidayCalendar> calendars,
                                                const DesignOptions& options) {
    if (dates.size() < returns.size()) throw DataError("fewer dates than returns");
    const auto ordered = order_calendars(calendars);
    std::vector<ReturnGroup> groups;
    for (const char* cls : {"Pre-holiday", "Holiday", "Post-holiday"}) {
        for (Country c : kCountries) {
            groups.push_back({std::string(cls) + " " + std::string(country_name(c)), {}});
        }
    }
    for (std::size_t i = 0; i < returns.size(); ++i) {
        for (std::size_t c = 0; c < 4; ++c) {
            const HolidayFlags f = classify(dates[i], *ordered[c], options.weekend_rule);
            if (f.pre) groups[c].values.push_back(returns[i]);
            if (f.holiday) groups[4 + c].values.push_back(returns[i]);
            if (f.post) groups[8 + c].values.push_back(returns[i]);
        }
    }
    return groups;
}

std::vector<Date> design_dates_for(const PriceSeries& series) {
    if (series.dates.size() < 2) throw DataError("need at least two prices");
    std::vector<Date> dates(series.dates.begin() + 1, series.dates.end());
    dates.push_back(series.dates.back() + days{1});
    return dates;
}

namespace {

IngestedData assemble(const PriceSeries& series, const DesignMatrix& design) {
    const std::vector<double> y = compute_returns(series);
    IngestedData out;
    out.dataset.returns = Eigen::Map<const VectorXd>(y.data(), static_cast<Index>(y.size()));
    out.dataset.design = design.values;
    out.dataset.labels = design.labels;
    out.dates = design.dates;
    out.dataset.validate();
    return out;
}

}  // namespace

IngestedData assemble_dataset(const PriceSeries& series, std::span<const HolidayCalendar> calendars,
                              const DesignOptions& options) {
    const std::vector<Date> dates = design_dates_for(series);
    return assemble(series, build_design_matrix(dates, calendars, options));
}

IngestedData assemble_constant_dataset(const PriceSeries& series) {
    const std::vector<Date> dates = design_dates_for(series);
    return assemble(series, build_constant_design(dates));
}

PriceSeries read_price_csv(const std::filesystem::path& path) {
    const auto lines = csv::read_lines(path);
    if (lines.empty()) throw DataError(path.string() + ": empty price file");
    const auto header = csv::split_line(lines.front().text);
    if (header.size() != 2 || header[0] != "date" || header[1] != "close") {
        throw DataError(path.string() + ":" + std::to_string(lines.front().number) +
                        ": expected header 'date,close'");
    }
    PriceSeries series;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string where = path.string() + ":" + std::to_string(lines[i].number);
        const auto fields = csv::split_line(lines[i].text);
        if (fields.size() != 2) throw DataError(where + ": expected 2 fields");
        try {
            series.dates.push_back(parse_date(fields[0]));
            series.prices.push_back(csv::parse_double(fields[1]));
        } catch (const DataError& e) {
            throw DataError(where + ": " + e.what());
        }
    }
    try {
        series.validate();
    } catch (const DataError& e) {
        throw DataError(path.string() + ": " + e.what());
    }
    return series;
}

void write_price_csv(const std::filesystem::path& path, const PriceSeries& series) {
    auto out = open_output(path);
    out << "date,close\n";
    for (std::size_t i = 0; i < series.dates.size(); ++i) {
        out << format_date(series.dates[i]) << ',' << csv::format_double(series.prices[i]) << '\n';
    }
}

HolidayCalendar read_holiday_file(const std::filesystem::path& path, Country country) {
    HolidayCalendar cal;
    cal.country = country;
    for (const auto& line : csv::read_lines(path, /*strip_comments=*/true)) {
        try {
            cal.holidays.insert(parse_date(line.text));
        } catch (const DataError& e) {
            throw DataError(path.string() + ":" + std::to_string(line.number) + ": " + e.what());
        }
    }
    return cal;
}

void write_holiday_file(const std::filesystem::path& path, const HolidayCalendar& calendar) {
    auto out = open_output(path);
    out << "# " << country_code(calendar.country) << " holidays\n";
    for (Date d : calendar.holidays) out << format_date(d) << '\n';
}

void write_design_csv(const std::filesystem::path& path, const DesignMatrix& design) {
    auto out = open_output(path);
    std::vector<std::string> header = {"date"};
    header.insert(header.end(), design.labels.begin(), design.labels.end());
    csv::write_row(out, header);
    for (Index r = 0; r < design.values.rows(); ++r) {
        out << format_date(design.dates[static_cast<std::size_t>(r)]);
        for (Index c = 0; c < design.values.cols(); ++c) out << ',' << csv::format_double(design.values(r, c));
        out << '\n';
    }
}

}  // namespace asv
