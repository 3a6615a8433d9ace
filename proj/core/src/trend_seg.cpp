#include "cadence/trend_seg.hpp"

#include "cadence/error.hpp"
#include "cadence/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace cadence {

double Segment::rms() const {
    return std::sqrt(sse / static_cast<double>(length()));
}

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;  // at x = 0, i.e. the first index of the range
    double sse = 0.0;
};

// Least squares on y[lo..hi] with x = 0..(hi - lo).
LineFit fit_range(std::span<const double> y, std::size_t lo, std::size_t hi) {
    const std::size_t n = hi - lo + 1;
    const double dn = static_cast<double>(n);
    const double mx = (dn - 1.0) / 2.0;
    double my = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) my += y[i];
    my /= dn;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) {
        const double dx = static_cast<double>(i - lo) - mx;
        sxx += dx * dx;
        sxy += dx * (y[i] - my);
    }
    LineFit f;
    f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    for (std::size_t i = lo; i <= hi; ++i) {
        const double e = y[i] - (f.intercept + f.slope * static_cast<double>(i - lo));
        f.sse += e * e;
    }
    return f;
}

class TopDown {
public:
    TopDown(const Series& s, double threshold) : series_(s), y_(s.values()), threshold_(threshold) {}

    void run(std::size_t lo, std::size_t hi) {
        const LineFit whole = fit_range(y_, lo, hi);
        const std::size_t n = hi - lo + 1;
        const double rms = std::sqrt(whole.sse / static_cast<double>(n));
        if (rms <= threshold_ + 1e-12 || n < 2 * kMinSegmentPoints) {
            emit(lo, hi, whole);
            return;
        }
        // Right child starts at `split`; both children keep >= 3 points.
        std::size_t best_split = 0;
        double best_sse = std::numeric_limits<double>::infinity();
        for (std::size_t split = lo + kMinSegmentPoints; split + kMinSegmentPoints <= hi + 1;
             ++split) {
            const double total = fit_range(y_, lo, split - 1).sse + fit_range(y_, split, hi).sse;
            if (total < best_sse - 1e-12) {
                best_sse = total;
                best_split = split;
            }
        }
        run(lo, best_split - 1);
        run(best_split, hi);
    }

    std::vector<Segment> take() { return std::move(segments_); }

private:
    void emit(std::size_t lo, std::size_t hi, const LineFit& f) {
        Segment seg;
        seg.start_day = series_.day_at(lo);
        seg.end_day = series_.day_at(hi);
        seg.slope = f.slope;
        seg.intercept = f.intercept;
        seg.sse = f.sse;
        segments_.push_back(seg);
    }

    const Series& series_;
    std::span<const double> y_;
    double threshold_;
    std::vector<Segment> segments_;
};

} // namespace

double median_consecutive_change(const Series& ratings) {
    if (ratings.size() < 2) {
        throw DomainError("consecutive changes need at least 2 points");
    }
    std::vector<double> diffs;
    diffs.reserve(ratings.size() - 1);
    for (std::size_t i = 1; i < ratings.size(); ++i) {
        diffs.push_back(std::fabs(ratings[i] - ratings[i - 1]));
    }
    return stats::median(std::move(diffs));
}

SegmentationResult fit_segments(const Series& ratings, std::optional<double> threshold) {
    if (ratings.size() < static_cast<std::size_t>(kMinSegmentPoints)) {
        throw DomainError("segmentation needs at least 3 points, got " +
                          std::to_string(ratings.size()));
    }
    const double thr = threshold ? *threshold : median_consecutive_change(ratings);
    if (!(thr >= 0.0)) {
        throw DomainError("segmentation threshold must be >= 0");
    }
    TopDown td(ratings, thr);
    td.run(0, ratings.size() - 1);
    return SegmentationResult{td.take(), thr};
}

std::optional<std::size_t> segment_index_at(const SegmentationResult& seg, Day day) {
    for (std::size_t i = 0; i < seg.segments.size(); ++i) {
        if (seg.segments[i].start_day <= day && day <= seg.segments[i].end_day) {
            return i;
        }
    }
    return std::nullopt;
}

const char* to_string(Transition t) {
    switch (t) {
    case Transition::ReversedIncreasing: return "reversed_increasing";
    case Transition::RestrainedDescending: return "restrained_descending";
    case Transition::AggravatedDescending: return "aggravated_descending";
    case Transition::ReversedDescending: return "reversed_descending";
    case Transition::RestrainedIncreasing: return "restrained_increasing";
    case Transition::AcceleratedIncreasing: return "accelerated_increasing";
    case Transition::Flat: return "flat";
    }
    return "?";
}

Transition classify_transition(double before, double after, double eps) {
    if (eps < 0.0) {
        throw DomainError("flat dead-band must be >= 0");
    }
    if (before < -eps) {
        if (after > eps) return Transition::ReversedIncreasing;
        if (after <= before) return Transition::AggravatedDescending;
        return Transition::RestrainedDescending;
    }
    if (before > eps) {
        if (after < -eps) return Transition::ReversedDescending;
        if (after >= before) return Transition::AcceleratedIncreasing;
        return Transition::RestrainedIncreasing;
    }
    return Transition::Flat;
}

double default_min_slope_delta(const SegmentationResult& seg) {
    if (seg.segments.empty()) {
        return 1e-4;
    }
    std::vector<double> slopes;
    slopes.reserve(seg.segments.size());
    for (const auto& s : seg.segments) slopes.push_back(std::fabs(s.slope));
    return std::max(1e-4, 0.1 * stats::median(std::move(slopes)));
}

std::vector<TurningPoint> turning_points(const SegmentationResult& seg, double min_slope_delta,
                                         double flat_eps) {
    std::vector<TurningPoint> points;
    for (std::size_t i = 1; i < seg.segments.size(); ++i) {
        const double before = seg.segments[i - 1].slope;
        const double after = seg.segments[i].slope;
        if (std::fabs(after - before) < min_slope_delta) {
            continue;
        }
        points.push_back(TurningPoint{seg.segments[i].start_day, before, after,
                                      classify_transition(before, after, flat_eps)});
    }
    return points;
}

std::vector<SignificantUpdate> link_significant_updates(std::span<const ReleaseEvent> releases,
                                                        std::span<const TurningPoint> points,
                                                        int lag_window) {
    if (lag_window < 0) {
        throw DomainError("lag window must be >= 0");
    }
    struct Candidate {
        int gap;
        std::size_t point;
        std::size_t release;
    };
    std::vector<Candidate> candidates;
    for (std::size_t p = 0; p < points.size(); ++p) {
        for (std::size_t r = 0; r < releases.size(); ++r) {
            const int gap = days_between(releases[r].day, points[p].day);
            if (gap >= 0 && gap <= lag_window) {
                candidates.push_back({gap, p, r});
            }
        }
    }
    std::sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
        return std::tie(a.gap, points[a.point].day, a.point, a.release) <
               std::tie(b.gap, points[b.point].day, b.point, b.release);
    });
    std::vector<bool> point_used(points.size(), false);
    std::vector<bool> release_used(releases.size(), false);
    std::vector<SignificantUpdate> links;
    for (const auto& c : candidates) {
        if (point_used[c.point] || release_used[c.release]) continue;
        point_used[c.point] = true;
        release_used[c.release] = true;
        links.push_back(SignificantUpdate{releases[c.release], points[c.point], c.gap});
    }
    std::sort(links.begin(), links.end(), [](const SignificantUpdate& a, const SignificantUpdate& b) {
        return a.turning_point.day < b.turning_point.day;
    });
    return links;
}

} // namespace cadence
