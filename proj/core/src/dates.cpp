#include "cadence/dates.hpp"

#include "cadence/error.hpp"

#include <charconv>
#include <cstdio>

namespace cadence {

namespace {

int parse_fixed(std::string_view text, std::size_t pos, std::size_t len) {
    int value = 0;
    const char* first = text.data() + pos;
    const char* last = first + len;
    for (const char* p = first; p != last; ++p) {
        if (*p < '0' || *p > '9') {
            throw ParseError("invalid ISO date '" + std::string(text) + "'");
        }
    }
    std::from_chars(first, last, value);
    return value;
}

} // namespace

Day parse_iso_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw ParseError("invalid ISO date '" + std::string(text) + "'");
    }
    const int y = parse_fixed(text, 0, 4);
    const int m = parse_fixed(text, 5, 2);
    const int d = parse_fixed(text, 8, 2);
    const std::chrono::year_month_day ymd{std::chrono::year{y},
                                          std::chrono::month{static_cast<unsigned>(m)},
                                          std::chrono::day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) {
        throw ParseError("invalid calendar date '" + std::string(text) + "'");
    }
    return Day{ymd};
}

std::string format_iso_date(Day day) {
    const std::chrono::year_month_day ymd{day};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

int iso_weekday_index(Day day) {
    const std::chrono::weekday wd{day};
    return static_cast<int>(wd.iso_encoding()) - 1;
}

IsoWeek iso_week(Day day) {
    // The ISO week belongs to the year containing its Thursday.
    const Day thursday = day + std::chrono::days{3 - iso_weekday_index(day)};
    const std::chrono::year_month_day ymd{thursday};
    const Day jan1 = Day{ymd.year() / std::chrono::January / 1};
    const int ordinal = days_between(jan1, thursday);
    return IsoWeek{static_cast<int>(ymd.year()), ordinal / 7 + 1};
}

std::string format_iso_week(IsoWeek week) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-W%02d", week.year, week.week);
    return buf;
}

} // namespace cadence
