#pragma once

#include "cadence/analysis.hpp"
#include "cadence/pipeline.hpp"

#include "io.hpp"

#include <map>
#include <string>
#include <vector>

namespace cadence::pipeline::artifacts {

// Run-directory layout.
inline const fs::path kSnapshots = "ingest/snapshots.jsonl";
inline const fs::path kApps = "ingest/apps.tsv";
inline const fs::path kReleases = "intervals/releases.tsv";
inline const fs::path kProfiles = "intervals/profiles.tsv";
inline const fs::path kCdf = "intervals/cdf.tsv";
inline const fs::path kWeekday = "intervals/weekday.tsv";
inline const fs::path kUpdateCounts = "intervals/update_counts.tsv";
inline const fs::path kCategoryMix = "intervals/category_mix.tsv";
inline const fs::path kCategorySuccessive = "intervals/category_successive.tsv";
inline const fs::path kSegments = "segment/segments.tsv";
inline const fs::path kTurningPoints = "segment/turning_points.tsv";
inline const fs::path kSignificant = "segment/significant.tsv";
inline const fs::path kLagPerApp = "lag/per_app.tsv";
inline const fs::path kLagHistogram = "lag/histogram.tsv";
inline const fs::path kLagSummary = "lag/summary.tsv";
inline const fs::path kWindows = "cluster/windows.tsv";
inline const fs::path kEmbedding = "cluster/embedding.tsv";
inline const fs::path kPatterns = "cluster/patterns.tsv";
inline const fs::path kClusterSummary = "cluster/summary.tsv";
inline const fs::path kVocabulary = "terms/vocabulary.tsv";
inline const fs::path kImportance = "terms/importance.tsv";
inline const fs::path kQuadrants = "terms/quadrants.tsv";
inline const fs::path kSamples = "train/samples.tsv";
inline const fs::path kModel = "train/model.txt";
inline const fs::path kCv = "train/cv.tsv";
inline const fs::path kTrainSummary = "train/summary.tsv";
inline const fs::path kRankTests = "train/rank_tests.tsv";
inline const fs::path kRecommendation = "recommend/recommendation.tsv";
inline const fs::path kRecommendationCurve = "recommend/curve.tsv";
inline const fs::path kScorecard = "score/scorecard.tsv";

inline const std::vector<std::string> kAppsHeader{"app_id", "category", "snapshots", "first_day",
                                                  "last_day"};
inline const std::vector<std::string> kReleasesHeader{
    "app_id", "day", "version_from", "version_to", "interval_days", "category", "whats_new"};
inline const std::vector<std::string> kSegmentsHeader{
    "app_id", "segment", "start_day", "end_day", "slope", "intercept", "sse", "threshold"};
inline const std::vector<std::string> kTurningPointsHeader{"app_id", "day", "slope_before",
                                                           "slope_after", "transition"};
inline const std::vector<std::string> kSamplesHeader{"app_id", "day",   "rank", "interval_days",
                                                     "category", "slope", "label"};
inline const std::vector<std::string> kEmbeddingHeader{"index", "app_id", "anchor_day",
                                                       "x",     "y",      "cluster"};
inline const std::vector<std::string> kQuadrantsHeader{"term", "sparse", "successive",
                                                       "quadrant"};
inline const std::vector<std::string> kLagSummaryHeader{"key", "value"};

void write_manifest(const Context& ctx, const std::string& stage, const fs::path& dir);

[[nodiscard]] std::vector<AppHistory> load_histories(const Context& ctx);

// Releases per app id, day-ordered.
[[nodiscard]] std::map<std::string, std::vector<ReleaseEvent>> load_releases(const Context& ctx);

[[nodiscard]] std::map<std::string, SegmentationResult> load_segments(const Context& ctx);

// One analysis per history, in history order, from the segment stage's
// output; turning points are not restored.
[[nodiscard]] std::vector<AppAnalysis> load_analyses(const Context& ctx,
                                                     const std::vector<AppHistory>& histories);

[[nodiscard]] std::vector<EffectSample> load_samples(const Context& ctx);

void warn(const Context& ctx, const std::string& stage, const std::string& message);

} // namespace cadence::pipeline::artifacts
