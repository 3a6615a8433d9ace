#include "cadence/analysis.hpp"
#include "cadence/effect.hpp"
#include "cadence/error.hpp"

#include "market.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

using namespace cadence;

namespace {

const Day kDay0 = parse_iso_date("2017-01-02");

Series step_series(int n, int step_at, double height) {
    std::vector<double> v(static_cast<std::size_t>(n), 3.5);
    for (int i = step_at; i < n; ++i) v[static_cast<std::size_t>(i)] += height;
    return Series(v, kDay0);
}

constexpr FeatureSet kIntervalOnly{false, true, false, false, false};

} // namespace

TEST(LabelEffect, StepUpIsPositive) {
    const auto s = step_series(40, 21, 0.2);
    EXPECT_EQ(label_effect(s, add_days(kDay0, 20), 4), EffectLabel::Positive);
    EXPECT_EQ(label_effect(step_series(40, 21, -0.2), add_days(kDay0, 20), 4), EffectLabel::Negative);
}

TEST(LabelEffect, FlatIsUnlabelled) {
    const auto s = step_series(40, 0, 0.0);
    EXPECT_FALSE(label_effect(s, add_days(kDay0, 20), 4).has_value());
}

TEST(LabelEffect, WindowLeavingSeriesIsUnlabelled) {
    const auto s = step_series(40, 21, 0.2);
    EXPECT_FALSE(label_effect(s, add_days(kDay0, 3), 4).has_value());
    EXPECT_FALSE(label_effect(s, add_days(kDay0, 36), 4).has_value());
    EXPECT_FALSE(label_effect(s, add_days(kDay0, -5), 4).has_value());
    EXPECT_THROW((void)label_effect(s, add_days(kDay0, 20), 0), DomainError);
}

TEST(LabelEffect, EdgeWindowsAreInside) {
    // idx - w == 0 and idx + w == n - 1 are the extreme admissible positions.
    std::vector<double> v(20);
    std::iota(v.begin(), v.end(), 0.0);
    const Series s(v, kDay0);
    EXPECT_EQ(label_effect(s, add_days(kDay0, 4), 4), EffectLabel::Positive);
    EXPECT_EQ(label_effect(s, add_days(kDay0, 15), 4), EffectLabel::Positive);
    EXPECT_FALSE(label_effect(s, add_days(kDay0, 16), 4).has_value());
}

TEST(LabelEffect, IsolatedReleasesMatchIntent) {
    GeneratorConfig c;
    c.seed = 2;
    const auto m = testkit::make_market(c);
    std::map<std::pair<std::string, Day>, EffectLabel> intent;
    for (const auto& app : m.generated.truth.apps) {
        for (const auto& r : app.releases) {
            if (r.effect) intent[{app.app_id, r.day}] = *r.effect;
        }
    }
    int agree = 0, compared = 0;
    for (const auto& h : m.histories) {
        const auto ev = derive_releases(h);
        for (std::size_t i = 0; i < ev.size(); ++i) {
            const bool crowded =
                (i > 0 && days_between(ev[i - 1].day, ev[i].day) <= kDefaultLagWindow) ||
                (i + 1 < ev.size() && days_between(ev[i].day, ev[i + 1].day) <= kDefaultLagWindow);
            const auto it = intent.find({h.app_id(), ev[i].day});
            if (crowded || it == intent.end()) continue;
            const auto l = label_effect(h, ev[i]);
            if (!l) continue;
            ++compared;
            agree += *l == it->second;
        }
    }
    ASSERT_GT(compared, 300);
    EXPECT_EQ(agree, compared);
}

TEST(LabelEffect, AgreesWithGeneratorIntent) {
    GeneratorConfig c;
    c.seed = 2;
    const auto m = testkit::make_market(c);
    std::map<std::pair<std::string, Day>, EffectLabel> intent;
    for (const auto& app : m.generated.truth.apps) {
        for (const auto& r : app.releases) {
            if (r.effect) intent[{app.app_id, r.day}] = *r.effect;
        }
    }
    int agree = 0, compared = 0;
    for (const auto& h : m.histories) {
        for (const auto& e : derive_releases(h)) {
            const auto it = intent.find({h.app_id(), e.day});
            if (it == intent.end()) continue;
            const auto l = label_effect(h, e);
            if (!l) continue;
            ++compared;
            agree += *l == it->second;
        }
    }
    ASSERT_GT(compared, 500);
    EXPECT_GE(static_cast<double>(agree) / compared, 0.95) << agree << " of " << compared;
}

TEST(Buckets, Rank) {
    EXPECT_EQ(rank_bucket(1), 0);
    EXPECT_EQ(rank_bucket(10), 0);
    EXPECT_EQ(rank_bucket(11), 1);
    EXPECT_EQ(rank_bucket(131), 2);
    EXPECT_EQ(rank_bucket(300), 3);
    EXPECT_EQ(rank_bucket(540), 4);
    EXPECT_EQ(rank_bucket(541), 5);
    EXPECT_THROW((void)rank_bucket(0), DomainError);
    EXPECT_EQ(rank_tier(150), 0);
    EXPECT_EQ(rank_tier(151), 1);
    EXPECT_EQ(rank_tier(301), 2);
}

TEST(Buckets, IntervalAndSlope) {
    EXPECT_EQ(interval_fine_bin(1), 0);
    EXPECT_EQ(interval_fine_bin(5), 4);
    EXPECT_EQ(interval_fine_bin(6), 5);
    EXPECT_EQ(interval_fine_bin(20), 6);
    EXPECT_EQ(interval_fine_bin(40), 7);
    EXPECT_EQ(interval_fine_bin(41), 8);
    EXPECT_THROW((void)interval_fine_bin(0), DomainError);
    EXPECT_EQ(slope_bucket(0.0, 0.01), 2);
    EXPECT_EQ(slope_bucket(-0.02, 0.01), 0);
    EXPECT_EQ(slope_bucket(-0.005, 0.01), 1);
    EXPECT_EQ(slope_bucket(0.005, 0.01), 3);
    EXPECT_EQ(slope_bucket(0.02, 0.01), 4);
    EXPECT_THROW((void)slope_bucket(NAN, 0.01), DomainError);
}

TEST(Featurize, OneHotPerGroup) {
    BucketSpec spec;
    spec.slope_cut = 0.01;
    spec.n_terms = 4;
    TermVector terms;
    terms.weights = {{1, 0.7}, {3, 0.2}};
    const auto x = featurize(131, 3, 0.0, terms, spec);
    ASSERT_EQ(x.size(), spec.dimension());
    ASSERT_EQ(x.size(), 6u + 12u + 5u + 9u + 4u);
    auto sum = [&](std::size_t from, std::size_t n) {
        return std::accumulate(x.begin() + static_cast<long>(from), x.begin() + static_cast<long>(from + n), 0.0);
    };
    EXPECT_EQ(sum(0, 6), 1.0);
    EXPECT_EQ(x[2], 1.0);           // rank 131
    EXPECT_EQ(sum(6, 3), 1.0);
    EXPECT_EQ(x[6], 1.0);           // successive
    EXPECT_EQ(sum(9, 9), 1.0);
    EXPECT_EQ(x[9 + 2], 1.0);       // t = 3
    EXPECT_EQ(sum(18, 5), 1.0);
    EXPECT_EQ(x[18 + 2], 1.0);      // flat slope
    EXPECT_EQ(sum(23, 9), 1.0);
    EXPECT_EQ(x[23 + 0], 1.0);      // tier 0, successive
    EXPECT_EQ(x[32 + 1], 0.7);
    EXPECT_EQ(x[32 + 3], 0.2);
    EXPECT_EQ(spec.feature_names().size(), spec.dimension());

    TermVector bad;
    bad.weights = {{4, 1.0}};
    EXPECT_THROW((void)featurize(5, 3, 0.0, bad, spec), DomainError);
}

TEST(Featurize, SubsetsDropGroups) {
    BucketSpec spec;
    spec.n_terms = 7;
    spec.features = FeatureSet::terms_only();
    EXPECT_EQ(spec.dimension(), 7u);
    spec.features = FeatureSet::terms_rank_slope();
    EXPECT_EQ(spec.dimension(), 7u + 6u + 5u);
    spec.features = kIntervalOnly;
    EXPECT_EQ(spec.dimension(), 12u);
}

TEST(OptimizeInterval, PicksPlantedBestAndBreaksTiesLow) {
    BucketSpec spec;
    spec.features = kIntervalOnly;
    std::vector<FeatureVector> x;
    std::vector<EffectLabel> y;
    for (int t = 1; t <= 5; ++t) {
        x.push_back(featurize(50, t, 0.0, {}, spec));
        y.push_back(EffectLabel::Positive);
    }
    for (int t = 6; t <= 60; ++t) {
        x.push_back(featurize(50, t, 0.0, {}, spec));
        y.push_back(EffectLabel::Negative);
    }
    const auto m = mnb_train(x, y);
    const auto rec = optimize_interval(m, spec, 50, 0.0, {});
    EXPECT_EQ(rec.t_best, 1);
    ASSERT_EQ(rec.probability_by_t.size(), 60u);
    for (int t = 2; t <= 5; ++t) {
        EXPECT_EQ(rec.probability_by_t[static_cast<std::size_t>(t - 1)], rec.probability_by_t[0]);
    }
    EXPECT_GT(rec.probability_by_t[0], rec.probability_by_t[5]);
    EXPECT_EQ(rec.predicted_positive_probability,
              mnb_predict(m, featurize(50, rec.t_best, 0.0, {}, spec)).positive_probability);

    const auto late = optimize_interval(m, spec, 50, 0.0, {}, 7, 30);
    EXPECT_EQ(late.t_min, 7);
    EXPECT_EQ(late.t_max, 30);
    EXPECT_GE(late.t_best, 7);
    EXPECT_LE(late.t_best, 30);
}

TEST(OptimizeInterval, NoIntervalFeatureMeansAllTie) {
    BucketSpec spec;
    spec.features = FeatureSet::terms_rank_slope();
    spec.slope_cut = 0.01;
    spec.n_terms = 2;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<FeatureVector> x;
    std::vector<EffectLabel> y;
    for (int i = 0; i < 40; ++i) {
        TermVector tv;
        tv.weights = {{0, u(rng)}, {1, u(rng)}};
        x.push_back(featurize(1 + i * 13, 1 + i % 30, u(rng) - 0.5, tv, spec));
        y.push_back(i % 2 ? EffectLabel::Positive : EffectLabel::Negative);
    }
    const auto m = mnb_train(x, y);
    const auto rec = optimize_interval(m, spec, 80, 0.003, {}, 3, 50);
    EXPECT_EQ(rec.t_best, 3);
    for (double p : rec.probability_by_t) EXPECT_EQ(p, rec.probability_by_t.front());
}

TEST(OptimizeInterval, RejectsEmptyRange) {
    BucketSpec spec;
    spec.features = kIntervalOnly;
    const std::vector<FeatureVector> x{featurize(1, 1, 0, {}, spec), featurize(1, 30, 0, {}, spec)};
    const std::vector<EffectLabel> y{EffectLabel::Positive, EffectLabel::Negative};
    const auto m = mnb_train(x, y);
    EXPECT_THROW((void)optimize_interval(m, spec, 10, 0.0, {}, 5, 4), DomainError);
    EXPECT_THROW((void)optimize_interval(m, spec, 10, 0.0, {}, 0, 4), DomainError);
}

TEST(OptimizeInterval, HighRankPrefersSuccessiveOnGeneratedMarket) {
    GeneratorConfig c;
    const auto m = testkit::make_market(c);
    const auto d = testkit::effect_data(m);
    std::vector<FeatureVector> x;
    std::vector<EffectLabel> y;
    testkit::featurize_all(d, d.spec, x, y);
    const auto model = mnb_train(x, y);
    const auto top = optimize_interval(model, d.spec, 10, 0.0, {});
    const auto low = optimize_interval(model, d.spec, 500, 0.0, {});
    EXPECT_EQ(categorize_interval(top.t_best), IntervalCategory::Successive) << top.t_best;
    EXPECT_NE(categorize_interval(low.t_best), IntervalCategory::Successive) << low.t_best;
}

TEST(ModelFile, RoundTrip) {
    GeneratorConfig c;
    c.n_apps = 60;
    c.seed = 8;
    const auto m = testkit::make_market(c);
    const auto d = testkit::effect_data(m);
    std::vector<FeatureVector> x;
    std::vector<EffectLabel> y;
    testkit::featurize_all(d, d.spec, x, y);
    EffectModel model{mnb_train(x, y), d.spec, d.vocabulary};

    std::stringstream buf;
    save_model(buf, model);
    const auto text = buf.str();
    const auto loaded = load_model(buf);
    EXPECT_EQ(loaded.mnb.dimension, model.mnb.dimension);
    EXPECT_EQ(loaded.mnb.log_prior, model.mnb.log_prior);
    EXPECT_EQ(loaded.mnb.log_likelihood, model.mnb.log_likelihood);
    EXPECT_EQ(loaded.spec.slope_cut, model.spec.slope_cut);
    EXPECT_EQ(loaded.spec.n_terms, model.spec.n_terms);
    EXPECT_EQ(loaded.vocabulary.terms(), model.vocabulary.terms());
    std::stringstream again;
    save_model(again, loaded);
    EXPECT_EQ(again.str(), text);
    for (std::size_t i = 0; i < x.size(); i += 7) {
        EXPECT_EQ(mnb_predict(loaded.mnb, x[i]).positive_probability,
                  mnb_predict(model.mnb, x[i]).positive_probability);
    }
}

TEST(ModelFile, VersionMismatchAndTruncation) {
    BucketSpec spec;
    spec.features = kIntervalOnly;
    const std::vector<FeatureVector> x{featurize(1, 1, 0, {}, spec), featurize(1, 30, 0, {}, spec)};
    const std::vector<EffectLabel> y{EffectLabel::Positive, EffectLabel::Negative};
    EffectModel model{mnb_train(x, y), spec, Vocabulary()};
    std::stringstream buf;
    save_model(buf, model);
    auto text = buf.str();

    auto bumped = text;
    bumped.replace(bumped.find("\t1\n"), 3, "\t2\n");
    std::istringstream b(bumped);
    EXPECT_THROW((void)load_model(b), ParseError);

    std::istringstream cut(text.substr(0, text.size() / 2));
    EXPECT_THROW((void)load_model(cut), ParseError);

    std::istringstream ok(text);
    EXPECT_NO_THROW((void)load_model(ok));
}

TEST(UpdateGroups, SplitByCategoryAndLabel) {
    std::vector<EffectSample> s(4);
    s[0].rank = 3;  s[0].interval = 2;  s[0].label = EffectLabel::Positive;
    s[1].rank = 90; s[1].interval = 4;  s[1].label = EffectLabel::Negative;
    s[2].rank = 7;  s[2].interval = 30; s[2].label = EffectLabel::Negative;
    s[3].rank = 11; s[3].interval = 9;  s[3].label = EffectLabel::Positive;
    const auto g = update_groups(s);
    EXPECT_EQ(g.ranks[0][1], (std::vector<double>{3}));
    EXPECT_EQ(g.ranks[0][0], (std::vector<double>{90}));
    EXPECT_EQ(g.ranks[2][0], (std::vector<double>{7}));
    EXPECT_EQ(g.ranks[1][1], (std::vector<double>{11}));
    EXPECT_TRUE(g.ranks[1][0].empty());
}

TEST(SlopeCut, MedianMagnitude) {
    std::vector<EffectSample> s(3);
    s[0].slope = -0.03;
    s[1].slope = 0.01;
    s[2].slope = 0.02;
    EXPECT_EQ(fit_slope_cut(s), 0.02);
    EXPECT_THROW((void)fit_slope_cut(std::span<const EffectSample>{}), UndefinedError);
}
