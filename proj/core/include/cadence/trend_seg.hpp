#pragma once

#include "cadence/data_model.hpp"
#include "cadence/series.hpp"

#include <optional>
#include <span>
#include <vector>

namespace cadence {

// Least-squares line over a closed day range; the fitted value on day d is
// intercept + slope * (d - start_day).
struct Segment {
    Day start_day{};
    Day end_day{};
    double slope = 0.0;      // rating units per day
    double intercept = 0.0;  // fitted value at start_day
    double sse = 0.0;

    [[nodiscard]] int length() const { return days_between(start_day, end_day) + 1; }
    [[nodiscard]] double rms() const;
    [[nodiscard]] double value_at(Day day) const {
        return intercept + slope * days_between(start_day, day);
    }
};

// Segments are day-disjoint and cover the series: segments[k+1].start_day is
// the day after segments[k].end_day.
struct SegmentationResult {
    std::vector<Segment> segments;
    double threshold = 0.0;  // RMS stopping threshold actually used
};

inline constexpr int kMinSegmentPoints = 3;

// Median of |T[i+1] - T[i]|.
[[nodiscard]] double median_consecutive_change(const Series& ratings);

// Top-down piecewise-linear segmentation. A segment is split at the index that
// minimises the summed SSE of the two child fits, each child keeping at least
// three points; splitting stops once the segment's RMS residual is within the
// threshold or it has fewer than six points. The default threshold is
// median_consecutive_change(ratings).
[[nodiscard]] SegmentationResult fit_segments(const Series& ratings,
                                              std::optional<double> threshold = std::nullopt);

// Index of the segment containing `day`, if any.
[[nodiscard]] std::optional<std::size_t> segment_index_at(const SegmentationResult& seg, Day day);

enum class Transition {
    ReversedIncreasing,
    RestrainedDescending,
    AggravatedDescending,
    ReversedDescending,
    RestrainedIncreasing,
    AcceleratedIncreasing,
    Flat,
};

[[nodiscard]] const char* to_string(Transition t);

inline constexpr double kFlatSlopeEps = 1e-4;

// Trend-change taxonomy. A descending trend (before < -eps) is reversed when
// the new slope exceeds eps, aggravated when it falls to or below the old
// slope, restrained otherwise; increasing trends mirror this. A flat prior
// trend (|before| <= eps) yields Flat.
[[nodiscard]] Transition classify_transition(double slope_before, double slope_after,
                                             double eps = kFlatSlopeEps);

struct TurningPoint {
    Day day{};  // first day of the new trend segment
    double slope_before = 0.0;
    double slope_after = 0.0;
    Transition transition = Transition::Flat;
};

// 10% of the median |segment slope|, floored at 1e-4.
[[nodiscard]] double default_min_slope_delta(const SegmentationResult& seg);

[[nodiscard]] std::vector<TurningPoint> turning_points(const SegmentationResult& seg,
                                                       double min_slope_delta,
                                                       double flat_eps = kFlatSlopeEps);

inline constexpr int kDefaultLagWindow = 4;

struct SignificantUpdate {
    ReleaseEvent release;
    TurningPoint turning_point;
    int gap_days = 0;  // turning_point.day - release.day
};

// Nearest release within [0, lag_window] days before each turning point. Pairs
// are taken greedily by gap, ties going to the earlier turning point; each
// release and each turning point is used at most once. Output is ordered by
// turning-point day.
[[nodiscard]] std::vector<SignificantUpdate> link_significant_updates(
    std::span<const ReleaseEvent> releases, std::span<const TurningPoint> points,
    int lag_window = kDefaultLagWindow);

} // namespace cadence
