#pragma once

#include <chrono>
#include <compare>
#include <string>
#include <string_view>

namespace cadence {

// Calendar day, UTC, day granularity.
using Day = std::chrono::sys_days;

// Parses YYYY-MM-DD. Throws ParseError on anything else.
[[nodiscard]] Day parse_iso_date(std::string_view text);
[[nodiscard]] std::string format_iso_date(Day day);

[[nodiscard]] inline int days_between(Day from, Day to) {
    return static_cast<int>((to - from).count());
}

[[nodiscard]] inline Day add_days(Day day, int n) { return day + std::chrono::days{n}; }

// 0 = Monday ... 6 = Sunday.
[[nodiscard]] int iso_weekday_index(Day day);

[[nodiscard]] inline bool is_weekend(Day day) { return iso_weekday_index(day) >= 5; }

struct IsoWeek {
    int year = 0;
    int week = 0;

    auto operator<=>(const IsoWeek&) const = default;
};

[[nodiscard]] IsoWeek iso_week(Day day);

// "2017-W03"
[[nodiscard]] std::string format_iso_week(IsoWeek week);

} // namespace cadence
