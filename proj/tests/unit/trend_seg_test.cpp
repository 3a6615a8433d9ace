#include "cadence/datagen.hpp"
#include "cadence/error.hpp"
#include "cadence/trend_seg.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace cadence;

namespace {

const Day kDay0 = parse_iso_date("2017-01-02");

Series line_pieces(const std::vector<std::pair<int, double>>& pieces, double start = 3.0) {
    std::vector<double> v;
    double y = start;
    for (const auto& [len, slope] : pieces) {
        for (int i = 0; i < len; ++i) {
            v.push_back(y);
            y += slope;
        }
    }
    return Series(std::move(v), kDay0);
}

std::vector<int> boundaries(const SegmentationResult& seg) {
    std::vector<int> out;
    for (std::size_t i = 1; i < seg.segments.size(); ++i) {
        out.push_back(days_between(kDay0, seg.segments[i].start_day));
    }
    return out;
}

double total_sse(const SegmentationResult& seg) {
    double s = 0;
    for (const auto& g : seg.segments) s += g.sse;
    return s;
}

void expect_covering(const SegmentationResult& seg, const Series& s) {
    ASSERT_FALSE(seg.segments.empty());
    EXPECT_EQ(seg.segments.front().start_day, s.origin());
    EXPECT_EQ(seg.segments.back().end_day, s.day_at(s.size() - 1));
    for (std::size_t i = 1; i < seg.segments.size(); ++i) {
        EXPECT_EQ(seg.segments[i].start_day, add_days(seg.segments[i - 1].end_day, 1));
    }
    for (const auto& g : seg.segments) EXPECT_GE(g.length(), kMinSegmentPoints);
}

ReleaseEvent release_at(int day) {
    ReleaseEvent e;
    e.app_id = "a";
    e.day = add_days(kDay0, day);
    return e;
}

TurningPoint point_at(int day) {
    return TurningPoint{add_days(kDay0, day), -0.1, 0.1, Transition::ReversedIncreasing};
}

} // namespace

TEST(FitSegments, ConstantSeriesIsOneFlatSegment) {
    for (int n : {3, 10, 105}) {
        const Series s(std::vector<double>(static_cast<std::size_t>(n), 4.2), kDay0);
        const auto seg = fit_segments(s);
        ASSERT_EQ(seg.segments.size(), 1u);
        EXPECT_NEAR(seg.segments[0].slope, 0.0, 1e-15);
        EXPECT_NEAR(seg.segments[0].sse, 0.0, 1e-20);
    }
}

TEST(FitSegments, TwoPieceKnee) {
    const auto s = line_pieces({{20, 1.0}, {20, -1.0}});
    const auto seg = fit_segments(s, 0.01);
    ASSERT_EQ(seg.segments.size(), 2u);
    EXPECT_NEAR(boundaries(seg)[0], 20, 1);
    expect_covering(seg, s);
}

TEST(FitSegments, RejectsShortSeriesAndNegativeThreshold) {
    const Series two({1.0, 2.0}, kDay0);
    EXPECT_THROW((void)fit_segments(two), DomainError);
    const Series s({1.0, 2.0, 3.0, 4.0}, kDay0);
    EXPECT_THROW((void)fit_segments(s, -1.0), DomainError);
}

TEST(FitSegments, DefaultThresholdIsMedianAbsoluteChange) {
    const Series s({1.0, 1.5, 1.4, 2.0, 2.1}, kDay0);
    EXPECT_DOUBLE_EQ(median_consecutive_change(s), 0.3);
    EXPECT_DOUBLE_EQ(fit_segments(s).threshold, 0.3);
}

TEST(FitSegments, SegmentsCoverTheSeries) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto p = planted_breakpoint_series(seed, 0.05);
        expect_covering(fit_segments(p.series), p.series);
    }
}

TEST(FitSegments, PlantedBreakpointRecovery) {
    int planted = 0, found = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto p = planted_breakpoint_series(seed, 0.02);
        const auto b = boundaries(fit_segments(p.series));
        for (int bp : p.breakpoints) {
            ++planted;
            found += std::any_of(b.begin(), b.end(), [&](int x) { return std::abs(x - bp) <= 2; });
        }
    }
    EXPECT_GE(static_cast<double>(found) / planted, 0.90);
}

TEST(FitSegments, NoiselessRecallIsComplete) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto p = planted_breakpoint_series(seed, 0.0);
        const auto b = boundaries(fit_segments(p.series));
        for (int bp : p.breakpoints) {
            EXPECT_TRUE(std::any_of(b.begin(), b.end(), [&](int x) { return std::abs(x - bp) <= 2; }))
                << "seed " << seed << " breakpoint " << bp;
        }
    }
}

TEST(FitSegments, SseNonincreasingAsSplitsAccumulate) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto p = planted_breakpoint_series(seed, 0.05);
        double prev = INFINITY;
        std::size_t prev_count = 0;
        for (double thr = 1.0; thr > 1e-4; thr *= 0.7) {
            const auto seg = fit_segments(p.series, thr);
            EXPECT_GE(seg.segments.size(), prev_count);
            EXPECT_LE(total_sse(seg), prev + 1e-12);
            prev = total_sse(seg);
            prev_count = seg.segments.size();
        }
    }
}

TEST(FitSegments, LeavesMeetTheStoppingRule) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        for (double sigma : {0.0, 0.02, 0.1}) {
            const auto p = planted_breakpoint_series(seed, sigma);
            const auto seg = fit_segments(p.series);
            for (const auto& g : seg.segments) {
                EXPECT_GE(g.length(), kMinSegmentPoints);
                EXPECT_TRUE(g.rms() <= seg.threshold + 1e-12 || g.length() < 2 * kMinSegmentPoints)
                    << "seed " << seed << " sigma " << sigma;
            }
        }
    }
}

TEST(TurningPoints, SingleSegmentHasNone) {
    const auto seg = fit_segments(line_pieces({{30, 0.01}}));
    EXPECT_TRUE(turning_points(seg, 1e-4).empty());
}

TEST(TurningPoints, DeltaFilterAndTransition) {
    SegmentationResult seg;
    seg.segments.push_back({kDay0, add_days(kDay0, 9), -0.1, 4.0, 0.0});
    seg.segments.push_back({add_days(kDay0, 10), add_days(kDay0, 19), 0.2, 3.0, 0.0});
    seg.segments.push_back({add_days(kDay0, 20), add_days(kDay0, 29), 0.21, 5.0, 0.0});
    const auto tp = turning_points(seg, 0.05);
    ASSERT_EQ(tp.size(), 1u);
    EXPECT_EQ(tp[0].day, add_days(kDay0, 10));
    EXPECT_EQ(tp[0].transition, Transition::ReversedIncreasing);
    EXPECT_DOUBLE_EQ(tp[0].slope_before, -0.1);
    EXPECT_DOUBLE_EQ(tp[0].slope_after, 0.2);
}

TEST(TurningPoints, VShapeHasOneValleyPoint) {
    const auto s = line_pieces({{50, -0.02}, {50, 0.02}});
    const auto seg = fit_segments(s);
    const auto tp = turning_points(seg, default_min_slope_delta(seg));
    ASSERT_EQ(tp.size(), 1u);
    EXPECT_LE(std::abs(days_between(kDay0, tp[0].day) - 50), 2);
    EXPECT_EQ(tp[0].transition, Transition::ReversedIncreasing);
}

TEST(TurningPoints, DefaultDeltaFloor) {
    SegmentationResult seg;
    seg.segments.push_back({kDay0, add_days(kDay0, 9), 0.0, 4.0, 0.0});
    EXPECT_DOUBLE_EQ(default_min_slope_delta(seg), 1e-4);
    seg.segments.push_back({add_days(kDay0, 10), add_days(kDay0, 19), 0.1, 4.0, 0.0});
    seg.segments.push_back({add_days(kDay0, 20), add_days(kDay0, 29), -0.3, 4.0, 0.0});
    EXPECT_DOUBLE_EQ(default_min_slope_delta(seg), 0.01);
}

TEST(Classify, Taxonomy) {
    EXPECT_EQ(classify_transition(-0.3, -0.1), Transition::RestrainedDescending);
    EXPECT_EQ(classify_transition(-0.1, -0.3), Transition::AggravatedDescending);
    EXPECT_EQ(classify_transition(-0.1, 0.2), Transition::ReversedIncreasing);
    EXPECT_EQ(classify_transition(0.3, 0.1), Transition::RestrainedIncreasing);
    EXPECT_EQ(classify_transition(0.1, 0.3), Transition::AcceleratedIncreasing);
    EXPECT_EQ(classify_transition(0.1, -0.2), Transition::ReversedDescending);
    EXPECT_EQ(classify_transition(0.0, 0.5), Transition::Flat);
    EXPECT_EQ(classify_transition(5e-5, -0.5), Transition::Flat);
    EXPECT_THROW((void)classify_transition(0.1, 0.2, -1.0), DomainError);
}

TEST(Classify, InvariantUnderPositiveScaling) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const double a = u(rng), b = u(rng), eps = 0.05;
        for (double k : {0.001, 0.5, 3.0, 1000.0}) {
            EXPECT_EQ(classify_transition(a, b, eps), classify_transition(k * a, k * b, k * eps));
        }
    }
}

TEST(LinkSignificant, NearestReleaseWithinWindow) {
    const std::vector<ReleaseEvent> rel{release_at(40), release_at(47)};
    const std::vector<TurningPoint> tp{point_at(50)};
    const auto links = link_significant_updates(rel, tp, 4);
    ASSERT_EQ(links.size(), 1u);
    EXPECT_EQ(links[0].release.day, add_days(kDay0, 47));
    EXPECT_EQ(links[0].gap_days, 3);
}

TEST(LinkSignificant, NothingInWindow) {
    const std::vector<ReleaseEvent> rel{release_at(40), release_at(51)};
    const std::vector<TurningPoint> tp{point_at(50)};
    EXPECT_TRUE(link_significant_updates(rel, tp, 4).empty());
    EXPECT_THROW((void)link_significant_updates(rel, tp, -1), DomainError);
}

TEST(LinkSignificant, ExactLagPlantingDependsOnWindow) {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<ReleaseEvent> rel;
        std::vector<TurningPoint> tp;
        int day = 5;
        for (int i = 0; i < 8; ++i) {
            day += std::uniform_int_distribution<>(6, 15)(rng);
            rel.push_back(release_at(day - 4));
            tp.push_back(point_at(day));
        }
        const auto with4 = link_significant_updates(rel, tp, 4);
        EXPECT_EQ(with4.size(), tp.size());
        for (const auto& l : with4) EXPECT_EQ(l.gap_days, 4);
        EXPECT_TRUE(link_significant_updates(rel, tp, 3).empty());
    }
}

TEST(LinkSignificant, GapsWithinWindowAndUsedOnce) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<ReleaseEvent> rel;
        std::vector<TurningPoint> tp;
        for (int d = 0; d < 100; ++d) {
            if (std::uniform_real_distribution<>(0, 1)(rng) < 0.15) rel.push_back(release_at(d));
            if (std::uniform_real_distribution<>(0, 1)(rng) < 0.08) tp.push_back(point_at(d));
        }
        const int window = std::uniform_int_distribution<>(0, 6)(rng);
        const auto links = link_significant_updates(rel, tp, window);
        std::set<Day> rdays, tdays;
        for (const auto& l : links) {
            EXPECT_GE(l.gap_days, 0);
            EXPECT_LE(l.gap_days, window);
            EXPECT_EQ(l.gap_days, days_between(l.release.day, l.turning_point.day));
            EXPECT_TRUE(rdays.insert(l.release.day).second);
            EXPECT_TRUE(tdays.insert(l.turning_point.day).second);
        }
        for (std::size_t i = 1; i < links.size(); ++i) {
            EXPECT_LT(links[i - 1].turning_point.day, links[i].turning_point.day);
        }
    }
}
