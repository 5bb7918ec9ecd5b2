#include "keystrength/calendar.hpp"

#include <charconv>
#include <cstdio>

#include "keystrength/errors.hpp"

namespace keystrength {

CalendarDate::CalendarDate(int year, int month) : year_(year), month_(month) {
    if (year < kMinYear || year > kMaxYear) {
        throw InputError("year must be in [" + std::to_string(kMinYear) + ", " +
                         std::to_string(kMaxYear) + "], got " + std::to_string(year));
    }
    if (month < 1 || month > 12) {
        throw InputError("month must be in [1, 12], got " + std::to_string(month));
    }
}

namespace {

int parse_int(std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw InputError("not a number: '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

CalendarDate CalendarDate::parse(std::string_view text) {
    const auto dash = text.find('-');
    if (dash == std::string_view::npos) {
        return CalendarDate(parse_int(text), 1);
    }
    return CalendarDate(parse_int(text.substr(0, dash)), parse_int(text.substr(dash + 1)));
}

std::string CalendarDate::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year_, month_);
    return buf;
}

CalendarDate CalendarDate::plus_months(long long months) const {
    long long total = static_cast<long long>(year_) * 12 + (month_ - 1) + months;
    long long y = total / 12;
    long long m = total % 12;
    if (m < 0) {  // keep month in [0, 11] for negative offsets
        m += 12;
        y -= 1;
    }
    return CalendarDate(static_cast<int>(y), static_cast<int>(m) + 1);
}

}  // namespace keystrength
