#include "cadence/data_model.hpp"

#include "cadence/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cadence {

void validate_snapshot(const AppSnapshot& s, std::size_t line) {
    if (s.app_id.empty()) {
        throw ValidationError("empty app_id", line);
    }
    if (!std::isfinite(s.rating) || s.rating < 1.0 || s.rating > 5.0) {
        throw ValidationError("rating " + std::to_string(s.rating) + " outside [1, 5]", line);
    }
    if (s.rank && *s.rank < 1) {
        throw ValidationError("rank must be >= 1", line);
    }
}

AppHistory::AppHistory(std::string app_id, std::string category,
                       std::vector<AppSnapshot> snapshots)
    : app_id_(std::move(app_id)), category_(std::move(category)),
      snapshots_(std::move(snapshots)) {
    std::stable_sort(snapshots_.begin(), snapshots_.end(),
                     [](const AppSnapshot& a, const AppSnapshot& b) { return a.day < b.day; });
    for (std::size_t i = 0; i < snapshots_.size(); ++i) {
        if (snapshots_[i].app_id != app_id_) {
            throw ValidationError("snapshot for '" + snapshots_[i].app_id +
                                  "' in history of '" + app_id_ + "'");
        }
        if (i > 0 && snapshots_[i].day == snapshots_[i - 1].day) {
            throw ValidationError("duplicate day " + format_iso_date(snapshots_[i].day) +
                                  " for app '" + app_id_ + "'");
        }
    }
}

int AppHistory::span_days() const {
    return empty() ? 0 : days_between(first_day(), last_day()) + 1;
}

const AppSnapshot* AppHistory::at(Day day) const {
    auto it = std::lower_bound(snapshots_.begin(), snapshots_.end(), day,
                               [](const AppSnapshot& s, Day d) { return s.day < d; });
    return (it != snapshots_.end() && it->day == day) ? &*it : nullptr;
}

const AppSnapshot* AppHistory::at_or_before(Day day) const {
    auto it = std::upper_bound(snapshots_.begin(), snapshots_.end(), day,
                               [](Day d, const AppSnapshot& s) { return d < s.day; });
    return it == snapshots_.begin() ? nullptr : &*std::prev(it);
}

const char* to_string(IntervalCategory category) {
    switch (category) {
    case IntervalCategory::Successive: return "successive";
    case IntervalCategory::Normal: return "normal";
    case IntervalCategory::Sparse: return "sparse";
    }
    return "?";
}

IntervalCategory categorize_interval(int interval_days) {
    if (interval_days < 1) {
        throw DomainError("interval must be >= 1 day, got " + std::to_string(interval_days));
    }
    if (interval_days <= 5) return IntervalCategory::Successive;
    if (interval_days <= 20) return IntervalCategory::Normal;
    return IntervalCategory::Sparse;
}

std::vector<ReleaseEvent> derive_releases(const AppHistory& history) {
    std::vector<ReleaseEvent> events;
    const auto snaps = history.snapshots();
    for (std::size_t i = 1; i < snaps.size(); ++i) {
        if (snaps[i].version == snaps[i - 1].version) {
            continue;
        }
        ReleaseEvent ev;
        ev.app_id = history.app_id();
        ev.day = snaps[i].day;
        ev.version_from = snaps[i - 1].version;
        ev.version_to = snaps[i].version;
        ev.whats_new = snaps[i].whats_new;
        if (!events.empty()) {
            const int k = days_between(events.back().day, ev.day);
            ev.interval_days = k;
            ev.category = categorize_interval(k);
        }
        events.push_back(std::move(ev));
    }
    return events;
}

std::optional<IntervalProfile> interval_profile(std::span<const ReleaseEvent> events) {
    std::vector<double> intervals;
    for (const auto& ev : events) {
        if (ev.interval_days) {
            intervals.push_back(*ev.interval_days);
        }
    }
    if (intervals.size() < 2) {
        return std::nullopt;
    }
    const double n = static_cast<double>(intervals.size());
    const double mean = std::accumulate(intervals.begin(), intervals.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : intervals) {
        ss += (v - mean) * (v - mean);
    }
    IntervalProfile p;
    p.app_id = events.front().app_id;
    p.mean_interval = mean;
    p.std_interval = std::sqrt(ss / (n - 1.0));
    p.n_releases = static_cast<int>(events.size());
    return p;
}

WeekdayTable weekday_distribution(std::span<const ReleaseEvent> events) {
    WeekdayTable table;
    for (const auto& ev : events) {
        auto& row = table[iso_week(ev.day)];
        ++row[static_cast<std::size_t>(iso_weekday_index(ev.day))];
    }
    return table;
}

WeekdayTable weekday_distribution(std::span<const AppHistory> histories) {
    WeekdayTable table;
    for (const auto& h : histories) {
        for (const auto& ev : derive_releases(h)) {
            auto& row = table[iso_week(ev.day)];
            ++row[static_cast<std::size_t>(iso_weekday_index(ev.day))];
        }
    }
    return table;
}

std::vector<CdfPoint> interval_cdf(std::span<const ReleaseEvent> events) {
    std::map<int, int> counts;
    int total = 0;
    for (const auto& ev : events) {
        if (ev.interval_days) {
            ++counts[*ev.interval_days];
            ++total;
        }
    }
    if (total == 0) {
        throw UndefinedError("interval CDF needs at least one release with an interval");
    }
    std::vector<CdfPoint> cdf;
    cdf.reserve(counts.size());
    int running = 0;
    for (const auto& [k, c] : counts) {
        running += c;
        // Exact 1.0 at the last point: running == total there.
        cdf.push_back({k, running == total ? 1.0 : static_cast<double>(running) / total});
    }
    return cdf;
}

double cdf_at(std::span<const CdfPoint> cdf, int interval_days) {
    double value = 0.0;
    for (const auto& p : cdf) {
        if (p.interval_days > interval_days) break;
        value = p.fraction;
    }
    return value;
}

CategoryMix category_mix(std::span<const ReleaseEvent> events) {
    int counts[3] = {0, 0, 0};
    int total = 0;
    for (const auto& ev : events) {
        if (ev.category) {
            ++counts[static_cast<int>(*ev.category)];
            ++total;
        }
    }
    CategoryMix mix;
    mix.total = total;
    if (total > 0) {
        mix.successive = static_cast<double>(counts[0]) / total;
        mix.normal = static_cast<double>(counts[1]) / total;
        mix.sparse = static_cast<double>(counts[2]) / total;
    }
    return mix;
}

std::map<int, int> update_count_distribution(std::span<const AppHistory> histories) {
    std::map<int, int> dist;
    for (const auto& h : histories) {
        ++dist[static_cast<int>(derive_releases(h).size())];
    }
    return dist;
}

Series rating_series(const AppHistory& history) {
    if (history.empty()) {
        throw UndefinedError("rating series of empty history");
    }
    const auto snaps = history.snapshots();
    std::vector<double> values(static_cast<std::size_t>(history.span_days()));
    for (std::size_t i = 0; i < snaps.size(); ++i) {
        const auto at = static_cast<std::size_t>(days_between(history.first_day(), snaps[i].day));
        values[at] = snaps[i].rating;
        if (i == 0) continue;
        const auto prev = static_cast<std::size_t>(
            days_between(history.first_day(), snaps[i - 1].day));
        const double a = snaps[i - 1].rating;
        const double b = snaps[i].rating;
        const double gap = static_cast<double>(at - prev);
        for (std::size_t d = prev + 1; d < at; ++d) {
            values[d] = a + (b - a) * static_cast<double>(d - prev) / gap;
        }
    }
    return Series(std::move(values), history.first_day());
}

} // namespace cadence
