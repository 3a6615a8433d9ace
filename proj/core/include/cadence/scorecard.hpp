#pragma once

#include "cadence/datagen.hpp"
#include "cadence/effect.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cadence {

// Analysis results to score against a generator's ground truth. Every part
// is optional; absent parts leave their metrics unset.
struct AnalysisOutputs {
    std::string run_id;
    std::map<std::string, std::vector<Day>> turning_points;  // per app
    std::optional<int> corpus_peak_lag;
    std::vector<std::vector<double>> cluster_means;
    std::vector<EffectSample> labelled;  // observed labels per release
    std::vector<ReleaseEvent> releases;
};

struct ArchetypeMatch {
    std::vector<int> archetype_of_cluster;
    std::vector<double> correlation;  // per cluster
    double min_correlation = 0.0;
};

// Assignment of clusters to distinct archetypes maximising the smallest
// Pearson correlation between a cluster mean and its archetype profile.
// Needs at most as many clusters as archetypes.
[[nodiscard]] ArchetypeMatch match_archetypes(const std::vector<std::vector<double>>& cluster_means);

struct Scorecard {
    std::string run_id;
    std::optional<double> breakpoint_recall;
    std::optional<double> breakpoint_precision;
    int planted_turning_points = 0;
    int planted_lag = 0;
    std::optional<int> detected_lag;
    std::optional<ArchetypeMatch> clusters;
    std::optional<double> label_agreement;
    int labels_compared = 0;
    std::optional<CategoryMix> interval_mix;
    std::optional<double> weekday_share;
    std::optional<double> successive_rank_p;  // Mann-Whitney, positive vs negative
    std::optional<double> sparse_rank_p;
};

inline constexpr int kBreakpointTolerance = 2;

// Throws DomainError when the run ids differ.
[[nodiscard]] Scorecard validate_against_truth(const AnalysisOutputs& outputs,
                                               const GroundTruth& truth);

} // namespace cadence
