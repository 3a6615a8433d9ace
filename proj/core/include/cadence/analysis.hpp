#pragma once

#include "cadence/effect.hpp"
#include "cadence/lag_scan.hpp"
#include "cadence/lasso.hpp"
#include "cadence/trend_seg.hpp"

#include <optional>
#include <span>
#include <vector>

namespace cadence {

struct AppAnalysis {
    std::string app_id;
    std::vector<ReleaseEvent> releases;
    Series ratings;
    SegmentationResult segmentation;
    std::vector<TurningPoint> turning_points;
    std::vector<SignificantUpdate> significant;
};

struct SegmentParams {
    std::optional<double> threshold;         // default: median consecutive change
    std::optional<double> min_slope_delta;   // default: default_min_slope_delta
    double flat_eps = kFlatSlopeEps;
    int lag_window = kDefaultLagWindow;
};

[[nodiscard]] AppAnalysis analyze_app(const AppHistory& history, const SegmentParams& params = {});

// Slope of the segment holding `day`.
[[nodiscard]] double trend_slope_at(const SegmentationResult& seg, Day day);

// Slope of the segment holding day + lag minus the slope at day.
[[nodiscard]] double trend_change(const SegmentationResult& seg, Day day, int lag);

// Release notes of releases carrying text, one document per release.
[[nodiscard]] std::vector<Tokens> release_documents(std::span<const AppAnalysis> apps);

enum class LabelRule { RatingDelta, SlopeDelta };

struct SampleParams {
    int lag_window = kDefaultLagWindow;
    LabelRule rule = LabelRule::RatingDelta;
};

// One sample per release with an interval, a rank and a defined label.
[[nodiscard]] std::vector<EffectSample> build_effect_samples(std::span<const AppHistory> histories,
                                                             std::span<const AppAnalysis> apps,
                                                             const Vocabulary& vocab,
                                                             const SampleParams& params = {});

struct TermParams {
    std::size_t top_terms = 500;
    int lag_window = kDefaultLagWindow;
    int folds = 5;
    int n_lambdas = 50;
    double lambda_min_ratio = 1e-3;
    std::uint64_t seed = 0;
};

// Lasso of the trend change after each release on the release-note tf-idf
// weights, for releases of one interval category whose notes differ from
// the previous release's.
[[nodiscard]] TermImportance term_importance(std::span<const AppAnalysis> apps,
                                             const Vocabulary& vocab, IntervalCategory group,
                                             const TermParams& params = {});

} // namespace cadence
