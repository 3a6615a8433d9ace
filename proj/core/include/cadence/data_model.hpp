#pragma once

#include "cadence/dates.hpp"
#include "cadence/series.hpp"

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cadence {

// Google Play top lists hold 540 apps per category.
inline constexpr int kTopListSize = 540;

struct AppSnapshot {
    std::string app_id;
    std::string category;
    Day day{};
    std::optional<int> rank;  // 1 = top of the category list
    double rating = 0.0;      // [1, 5]
    std::string version;
    std::optional<std::string> whats_new;

    bool operator==(const AppSnapshot&) const = default;
};

// Throws ValidationError (carrying `line` when nonzero) if a field is out of range.
void validate_snapshot(const AppSnapshot& snapshot, std::size_t line = 0);

// One app's day-ordered observations. Immutable once built.
class AppHistory {
public:
    // Sorts by day; throws ValidationError on mixed app ids or duplicate days.
    AppHistory(std::string app_id, std::string category, std::vector<AppSnapshot> snapshots);

    [[nodiscard]] const std::string& app_id() const noexcept { return app_id_; }
    [[nodiscard]] const std::string& category() const noexcept { return category_; }
    [[nodiscard]] std::span<const AppSnapshot> snapshots() const noexcept { return snapshots_; }
    [[nodiscard]] bool empty() const noexcept { return snapshots_.empty(); }
    [[nodiscard]] Day first_day() const { return snapshots_.front().day; }
    [[nodiscard]] Day last_day() const { return snapshots_.back().day; }
    // Number of calendar days covered, gaps included.
    [[nodiscard]] int span_days() const;

    // Snapshot observed on `day`, if any.
    [[nodiscard]] const AppSnapshot* at(Day day) const;
    // Latest snapshot on or before `day`, if any.
    [[nodiscard]] const AppSnapshot* at_or_before(Day day) const;

private:
    std::string app_id_;
    std::string category_;
    std::vector<AppSnapshot> snapshots_;
};

enum class IntervalCategory { Successive, Normal, Sparse };

[[nodiscard]] const char* to_string(IntervalCategory category);

struct ReleaseEvent {
    std::string app_id;
    Day day{};
    std::string version_from;
    std::string version_to;
    std::optional<int> interval_days;            // absent for the first observed release
    std::optional<IntervalCategory> category;    // present iff interval_days is
    std::optional<std::string> whats_new;

    bool operator==(const ReleaseEvent&) const = default;
};

struct IntervalProfile {
    std::string app_id;
    double mean_interval = 0.0;
    double std_interval = 0.0;  // sample (n - 1) standard deviation
    int n_releases = 0;
};

// Successive = [1, 5], Normal = [6, 20], Sparse = [21, inf).
[[nodiscard]] IntervalCategory categorize_interval(int interval_days);

// One event per version change; a change across a crawl gap is dated at the
// first day the new version is seen.
[[nodiscard]] std::vector<ReleaseEvent> derive_releases(const AppHistory& history);

// Mean and sample std of the app's intervals; absent below two intervals.
[[nodiscard]] std::optional<IntervalProfile> interval_profile(std::span<const ReleaseEvent> events);

// Release counts per ISO week, Monday first.
using WeekdayTable = std::map<IsoWeek, std::array<int, 7>>;

[[nodiscard]] WeekdayTable weekday_distribution(std::span<const AppHistory> histories);
[[nodiscard]] WeekdayTable weekday_distribution(std::span<const ReleaseEvent> events);

struct CdfPoint {
    int interval_days = 0;
    double fraction = 0.0;  // share of intervals <= interval_days
};

// Empirical CDF over the distinct interval values. Throws UndefinedError when
// no event carries an interval.
[[nodiscard]] std::vector<CdfPoint> interval_cdf(std::span<const ReleaseEvent> events);

// Step-function evaluation of a CDF table at `interval_days`.
[[nodiscard]] double cdf_at(std::span<const CdfPoint> cdf, int interval_days);

struct CategoryMix {
    double successive = 0.0;
    double normal = 0.0;
    double sparse = 0.0;
    int total = 0;
};

[[nodiscard]] CategoryMix category_mix(std::span<const ReleaseEvent> events);

// Number of apps having made exactly k releases, for each observed k >= 0.
[[nodiscard]] std::map<int, int> update_count_distribution(
    std::span<const AppHistory> histories);

// Daily rating series over the history's full span; crawl gaps are filled by
// linear interpolation between the neighbouring observations.
[[nodiscard]] Series rating_series(const AppHistory& history);

} // namespace cadence
