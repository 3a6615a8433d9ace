#pragma once

#include "cadence/data_model.hpp"
#include "cadence/mnb.hpp"
#include "cadence/text.hpp"
#include "cadence/trend_seg.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cadence {

// Mean rating over (day, day + lag] minus mean over [day - lag, day]; absent
// when either window leaves the series or the difference is zero.
[[nodiscard]] std::optional<EffectLabel> label_effect(const Series& ratings, Day release_day,
                                                      int lag_window = kDefaultLagWindow);
[[nodiscard]] std::optional<EffectLabel> label_effect(const AppHistory& history,
                                                      const ReleaseEvent& release,
                                                      int lag_window = kDefaultLagWindow);

// Slope of the segment holding release_day + lag minus the slope of the
// segment holding release_day; absent when the difference is below eps.
[[nodiscard]] std::optional<EffectLabel> label_effect_by_slope(const SegmentationResult& seg,
                                                               Day release_day,
                                                               int lag_window = kDefaultLagWindow,
                                                               double eps = kFlatSlopeEps);

struct EffectSample {
    std::string app_id;
    Day day{};
    int rank = 0;      // r, >= 1
    int interval = 0;  // t, >= 1
    double slope = 0.0;  // s, prior trend slope
    TermVector terms;    // C
    EffectLabel label = EffectLabel::Negative;
};

// Which factor groups enter the feature vector.
struct FeatureSet {
    bool rank = true;
    bool interval = true;
    bool slope = true;
    bool terms = true;
    bool rank_interval = true;  // rank tier x interval category one-hot

    [[nodiscard]] static FeatureSet full() { return {}; }
    [[nodiscard]] static FeatureSet terms_only() { return {false, false, false, true, false}; }
    [[nodiscard]] static FeatureSet terms_rank_slope() { return {true, false, true, true, false}; }
};

inline constexpr int kRankBuckets = 6;      // 1-10, 11-50, 51-150, 151-300, 301-540, >540
inline constexpr int kIntervalFineBins = 9; // 1, 2, 3, 4, 5, 6-10, 11-20, 21-40, >40
inline constexpr int kSlopeBuckets = 5;     // strong-, weak-, ~0, weak+, strong+
inline constexpr int kRankTiers = 3;        // 1-150, 151-300, >300; crossed with interval category

struct BucketSpec {
    double slope_cut = 0.0;  // |s| above this is strong
    double flat_eps = kFlatSlopeEps;
    std::size_t n_terms = 0;
    FeatureSet features;

    [[nodiscard]] std::size_t dimension() const;
    [[nodiscard]] std::vector<std::string> feature_names(const Vocabulary* vocab = nullptr) const;
};

[[nodiscard]] int rank_bucket(int rank);
[[nodiscard]] int rank_tier(int rank);
[[nodiscard]] int interval_fine_bin(int interval_days);
[[nodiscard]] int slope_bucket(double slope, double cut, double flat_eps = kFlatSlopeEps);

// Median |s| over the samples.
[[nodiscard]] double fit_slope_cut(std::span<const EffectSample> samples);

[[nodiscard]] FeatureVector featurize(int rank, int interval, double slope, const TermVector& terms,
                                      const BucketSpec& spec);
[[nodiscard]] FeatureVector featurize(const EffectSample& sample, const BucketSpec& spec);

struct Recommendation {
    int t_best = 0;
    double predicted_positive_probability = 0.0;
    int t_min = 0;
    int t_max = 0;
    std::vector<double> probability_by_t;  // index t - t_min
};

inline constexpr int kDefaultTMin = 1;
inline constexpr int kDefaultTMax = 60;

// Scans every integer t in [t_min, t_max]; ties go to the smallest t.
[[nodiscard]] Recommendation optimize_interval(const MnbModel& model, const BucketSpec& spec,
                                               int rank, double slope, const TermVector& terms,
                                               int t_min = kDefaultTMin, int t_max = kDefaultTMax);

// A trained model together with everything needed to featurize new input.
struct EffectModel {
    MnbModel mnb;
    BucketSpec spec;
    Vocabulary vocabulary;
};

inline constexpr int kModelFormatVersion = 1;

void save_model(std::ostream& out, const EffectModel& model);
// Throws ParseError on malformed input or a format-version mismatch.
[[nodiscard]] EffectModel load_model(std::istream& in);

} // namespace cadence

namespace cadence {

// Ranks at release time split by interval category and observed effect:
// ranks[category][label].
struct UpdateGroups {
    std::array<std::array<std::vector<double>, 2>, 3> ranks;
};

[[nodiscard]] UpdateGroups update_groups(std::span<const EffectSample> samples);

} // namespace cadence
