#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace keystrength {

// Month-resolution calendar date. Factoring history and compute-growth
// arithmetic never need finer granularity than this.
class CalendarDate {
public:
    static constexpr int kMinYear = 1900;
    static constexpr int kMaxYear = 2500;

    CalendarDate(int year, int month);  // throws InputError outside the valid range

    int year() const { return year_; }
    int month() const { return month_; }

    // Accepts "YYYY" (month defaults to January) or "YYYY-MM".
    static CalendarDate parse(std::string_view text);

    std::string to_string() const;  // "YYYY-MM"

    CalendarDate plus_months(long long months) const;

    // Year fraction with January = .0 (2015-01 -> 2015.0, 2016-07 -> 2016.5).
    double year_fraction() const { return year_ + (month_ - 1) / 12.0; }

    // Month-center convention used for trend regression (2015-01 -> 2015.041666...).
    double year_fraction_mid() const { return year_ + (month_ - 0.5) / 12.0; }

    friend auto operator<=>(const CalendarDate&, const CalendarDate&) = default;

private:
    int year_;
    int month_;
};

}  // namespace keystrength
