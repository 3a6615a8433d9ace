#include "cadence/datagen.hpp"
#include "cadence/error.hpp"
#include "cadence/lag_scan.hpp"
#include "cadence/stats.hpp"

#include "market.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace cadence;

namespace {

const Day kDay0 = parse_iso_date("2017-01-02");

AppHistory history_with_releases(const std::vector<int>& days, int span) {
    std::vector<AppSnapshot> snaps;
    int v = 0;
    for (int d = 0; d < span; ++d) {
        if (std::find(days.begin(), days.end(), d) != days.end()) ++v;
        AppSnapshot s;
        s.app_id = "a";
        s.category = "TOOLS";
        s.day = add_days(kDay0, d);
        s.rating = 4.0;
        s.version = std::to_string(v);
        snaps.push_back(s);
    }
    return AppHistory("a", "TOOLS", std::move(snaps));
}

std::vector<double> impulses(std::size_t n, double rate, std::mt19937_64& rng) {
    std::bernoulli_distribution b(rate);
    std::vector<double> v(n);
    for (auto& x : v) x = b(rng) ? 1.0 : 0.0;
    if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) v[n / 2] = 1.0;
    return v;
}

LagResult single(const std::vector<int>& lags, double p) {
    LagResult r;
    for (int l = 0; l <= 10; ++l) {
        LagEntry e;
        e.lag = l;
        e.r = 0.1;
        e.p = std::find(lags.begin(), lags.end(), l) != lags.end() ? p : 0.5;
        r.per_lag.push_back(e);
    }
    return r;
}

} // namespace

TEST(ReleaseImpulse, MarksReleaseDays) {
    const auto s = release_impulse(history_with_releases({2, 5}, 7));
    const std::vector<double> expect{0, 0, 1, 0, 0, 1, 0};
    EXPECT_EQ(std::vector<double>(s.values().begin(), s.values().end()), expect);
    EXPECT_EQ(s.origin(), kDay0);
}

TEST(ReleaseImpulse, NoReleasesAllZero) {
    const auto s = release_impulse(history_with_releases({}, 30));
    for (double v : s.values()) EXPECT_EQ(v, 0.0);
}

TEST(ReleaseImpulse, CountMatchesPlantedReleases) {
    GeneratorConfig c;
    c.n_apps = 40;
    c.seed = 21;
    const auto m = testkit::make_market(c);
    for (std::size_t i = 0; i < m.histories.size(); ++i) {
        const auto& h = m.histories[i];
        const auto it = std::find_if(m.generated.truth.apps.begin(), m.generated.truth.apps.end(),
                                     [&](const PlantedApp& a) { return a.app_id == h.app_id(); });
        ASSERT_NE(it, m.generated.truth.apps.end());
        const auto s = release_impulse(h);
        const double count = std::accumulate(s.values().begin(), s.values().end(), 0.0);
        EXPECT_EQ(count, static_cast<double>(it->releases.size())) << h.app_id();
    }
}

TEST(LagCorrelations, ShiftedSeriesPeaksAtFour) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        std::mt19937_64 rng(seed);
        const auto u = impulses(105, 0.15, rng);
        std::normal_distribution<double> noise(0.0, 0.005);
        std::vector<double> r(u.size(), 4.0);
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] += (i >= 4 ? 0.1 * u[i - 4] : 0.0) + noise(rng);
        }
        const auto res = lag_correlations(Series(u, kDay0), Series(r, kDay0));
        ASSERT_TRUE(res.best_lag) << "seed " << seed;
        EXPECT_EQ(*res.best_lag, 4) << "seed " << seed;
        EXPECT_EQ(res.per_lag.size(), 11u);
    }
}

TEST(LagCorrelations, IdenticalSeriesCorrelatePerfectlyAtZero) {
    std::mt19937_64 rng(3);
    const auto u = impulses(60, 0.2, rng);
    const auto res = lag_correlations(Series(u, kDay0), Series(u, kDay0));
    EXPECT_NEAR(res.per_lag[0].r, 1.0, 1e-12);
    EXPECT_EQ(res.per_lag[0].p, 0.0);
    EXPECT_EQ(res.best_lag, 0);
}

TEST(LagCorrelations, LagZeroEqualsSmoothedPearson) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(4.0, 0.1);
    for (int trial = 0; trial < 30; ++trial) {
        const auto u = impulses(80, 0.1, rng);
        std::vector<double> r(80);
        for (auto& x : r) x = g(rng);
        const auto res = lag_correlations(Series(u, kDay0), Series(r, kDay0));
        const double direct =
            stats::pearson_r(stats::moving_average(u, 3), stats::moving_average(r, 3));
        EXPECT_NEAR(res.per_lag[0].r, direct, 1e-12);
    }
}

TEST(LagCorrelations, InvariantUnderCommonShift) {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(4.0, 0.1);
    const auto u = impulses(90, 0.15, rng);
    std::vector<double> r(90), lifted(90);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] = g(rng);
        lifted[i] = r[i] + 0.5;
    }
    const auto a = lag_correlations(Series(u, kDay0), Series(r, kDay0));
    const auto b = lag_correlations(Series(u, add_days(kDay0, 37)), Series(r, add_days(kDay0, 37)));
    const auto c = lag_correlations(Series(u, kDay0), Series(lifted, kDay0));
    for (std::size_t l = 0; l < a.per_lag.size(); ++l) {
        EXPECT_EQ(a.per_lag[l].r, b.per_lag[l].r);
        EXPECT_NEAR(a.per_lag[l].r, c.per_lag[l].r, 1e-12);
    }
}

TEST(LagCorrelations, ConstantRatingsFlagUndefinedEntries) {
    std::mt19937_64 rng(9);
    const auto u = impulses(40, 0.2, rng);
    const auto res = lag_correlations(Series(u, kDay0), Series(std::vector<double>(40, 4.0), kDay0));
    for (const auto& e : res.per_lag) EXPECT_FALSE(e.defined);
    EXPECT_FALSE(res.best_lag);
}

TEST(LagCorrelations, RejectsBadArguments) {
    const Series a(std::vector<double>(20, 0.0), kDay0), b(std::vector<double>(21, 0.0), kDay0);
    EXPECT_THROW((void)lag_correlations(a, b), DomainError);
    const Series shortish(std::vector<double>(13, 0.0), kDay0);
    EXPECT_THROW((void)lag_correlations(shortish, shortish), DomainError);
    LagOptions bad;
    bad.alpha = 0.0;
    EXPECT_THROW((void)lag_correlations(a, a, bad), DomainError);
}

TEST(LagCorrelations, IndependentSeriesRarelySignificant) {
    int with_best = 0, tests = 0, false_positive = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        std::mt19937_64 rng(1000 + seed);
        const auto u = impulses(105, 0.15, rng);
        std::normal_distribution<double> step(0.0, 0.01);
        std::vector<double> r(105);
        double level = 4.0;
        for (auto& x : r) {
            level += step(rng);
            x = level;
        }
        const auto res = lag_correlations(Series(u, kDay0), Series(r, kDay0));
        with_best += res.best_lag.has_value();
        for (const auto& e : res.per_lag) {
            ++tests;
            false_positive += e.defined && e.p <= 0.01;
        }
        if (res.best_lag) {
            const auto& e = res.per_lag[static_cast<std::size_t>(*res.best_lag)];
            EXPECT_LE(e.p, 0.01);
        }
    }
    EXPECT_LE(with_best, 5);
    EXPECT_LE(static_cast<double>(false_positive) / tests, 0.05);
}

TEST(EffectiveN, MatchesNaiveTestForWhiteNoise) {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    double worst = 0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(400), y(400);
        for (auto& v : x) v = g(rng);
        for (auto& v : y) v = g(rng);
        const double r = stats::pearson_r(x, y);
        worst = std::max(worst, std::fabs(effective_n_pearson_p(x, y, r) - stats::pearson_p(r, 400)));
    }
    EXPECT_LT(worst, 0.1);
}

TEST(AggregateLags, SingleSignificantLag) {
    std::vector<LagResult> rs;
    for (int i = 0; i < 5; ++i) rs.push_back(single({2}, 0.001));
    const auto h = aggregate_lags(rs, 0.01);
    EXPECT_EQ(h.n_apps, 5);
    for (std::size_t l = 0; l < h.fraction.size(); ++l) EXPECT_EQ(h.fraction[l], l == 2 ? 1.0 : 0.0);
    EXPECT_EQ(h.peak_lag(), 2);
}

TEST(AggregateLags, OneAppGivesZeroOrOne) {
    std::vector<LagResult> rs{single({1, 4, 7}, 0.005)};
    for (double f : aggregate_lags(rs, 0.01).fraction) EXPECT_TRUE(f == 0.0 || f == 1.0);
}

TEST(AggregateLags, ErrorsOnEmptyOrMixedInput) {
    EXPECT_THROW((void)aggregate_lags(std::span<const LagResult>{}, 0.01), UndefinedError);
    std::vector<LagResult> rs{single({1}, 0.001), single({1}, 0.001)};
    rs[1].per_lag.pop_back();
    EXPECT_THROW((void)aggregate_lags(rs, 0.01), DomainError);
}

TEST(AggregateLags, OrderIndependent) {
    std::mt19937_64 rng(13);
    std::vector<LagResult> rs;
    std::uniform_real_distribution<double> u(0, 0.05);
    for (int i = 0; i < 30; ++i) {
        LagResult r;
        for (int l = 0; l <= 10; ++l) r.per_lag.push_back({l, u(rng) * 10, u(rng), true});
        rs.push_back(r);
    }
    const auto a = aggregate_lags(rs, 0.01);
    std::shuffle(rs.begin(), rs.end(), rng);
    const auto b = aggregate_lags(rs, 0.01);
    for (std::size_t l = 0; l < a.fraction.size(); ++l) {
        EXPECT_EQ(a.fraction[l], b.fraction[l]);
        EXPECT_NEAR(a.mean_abs_r[l], b.mean_abs_r[l], 1e-15);
    }
}

TEST(AggregateLags, PlantedHalfResponsiveCorpus) {
    const auto m = testkit::make_market(lag_study_config(1));
    const auto h = testkit::lag_histogram(m);
    EXPECT_EQ(h.peak_lag(), 4);
    EXPECT_NEAR(h.fraction[4], 0.5, 0.05);
}
