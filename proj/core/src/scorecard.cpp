#include "cadence/scorecard.hpp"

#include "cadence/error.hpp"
#include "cadence/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cadence {

ArchetypeMatch match_archetypes(const std::vector<std::vector<double>>& means) {
    if (means.empty() || means.size() > static_cast<std::size_t>(kArchetypeCount)) {
        throw DomainError("archetype matching needs 1 to 4 cluster means");
    }
    std::vector<std::vector<double>> corr(means.size(), std::vector<double>(kArchetypeCount));
    for (std::size_t c = 0; c < means.size(); ++c) {
        for (int a = 0; a < kArchetypeCount; ++a) {
            const auto& p = archetype_profile(static_cast<Archetype>(a));
            if (means[c].size() != p.size()) {
                throw DomainError("cluster mean length differs from the archetype window");
            }
            try {
                corr[c][static_cast<std::size_t>(a)] = stats::pearson_r(means[c], p);
            } catch (const UndefinedError&) {
                corr[c][static_cast<std::size_t>(a)] = 0.0;
            }
        }
    }
    std::vector<int> perm(kArchetypeCount);
    std::iota(perm.begin(), perm.end(), 0);
    ArchetypeMatch best;
    best.min_correlation = -2.0;
    do {
        double worst = 2.0;
        for (std::size_t c = 0; c < means.size(); ++c) {
            worst = std::min(worst, corr[c][static_cast<std::size_t>(perm[c])]);
        }
        if (worst > best.min_correlation) {
            best.min_correlation = worst;
            best.archetype_of_cluster.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(means.size()));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (std::size_t c = 0; c < means.size(); ++c) {
        best.correlation.push_back(corr[c][static_cast<std::size_t>(best.archetype_of_cluster[c])]);
    }
    return best;
}

Scorecard validate_against_truth(const AnalysisOutputs& out, const GroundTruth& truth) {
    if (out.run_id != truth.run_id) {
        throw DomainError("run id mismatch: outputs '" + out.run_id + "' vs truth '" +
                          truth.run_id + "'");
    }
    Scorecard sc;
    sc.run_id = truth.run_id;
    sc.planted_lag = truth.lag_days;
    sc.detected_lag = out.corpus_peak_lag;

    if (!out.turning_points.empty()) {
        int planted = 0, recovered = 0, detected = 0, matched = 0;
        for (const auto& app : truth.apps) {
            auto it = out.turning_points.find(app.app_id);
            static const std::vector<Day> none;
            const auto& found = it == out.turning_points.end() ? none : it->second;
            for (const auto& tp : app.turning_points) {
                ++planted;
                recovered += std::any_of(found.begin(), found.end(), [&](Day d) {
                    return std::abs(days_between(tp.day, d)) <= kBreakpointTolerance;
                });
            }
            if (!app.responsive) continue;
            for (Day d : found) {
                ++detected;
                matched += std::any_of(app.turning_points.begin(), app.turning_points.end(),
                                       [&](const PlantedTurningPoint& tp) {
                                           return std::abs(days_between(tp.day, d)) <= kBreakpointTolerance;
                                       });
            }
        }
        sc.planted_turning_points = planted;
        if (planted > 0) sc.breakpoint_recall = static_cast<double>(recovered) / planted;
        if (detected > 0) sc.breakpoint_precision = static_cast<double>(matched) / detected;
    }

    if (!out.cluster_means.empty()) {
        sc.clusters = match_archetypes(out.cluster_means);
    }

    if (!out.labelled.empty()) {
        std::map<std::pair<std::string, Day>, EffectLabel> intent;
        for (const auto& app : truth.apps) {
            for (const auto& r : app.releases) {
                if (r.effect) intent[{app.app_id, r.day}] = *r.effect;
            }
        }
        int agree = 0, compared = 0;
        for (const auto& s : out.labelled) {
            auto it = intent.find({s.app_id, s.day});
            if (it == intent.end()) continue;
            ++compared;
            agree += it->second == s.label ? 1 : 0;
        }
        sc.labels_compared = compared;
        if (compared > 0) sc.label_agreement = static_cast<double>(agree) / compared;

        const auto groups = update_groups(out.labelled);
        auto test = [&](IntervalCategory c) -> std::optional<double> {
            const auto& g = groups.ranks[static_cast<std::size_t>(c)];
            if (g[0].empty() || g[1].empty()) return std::nullopt;
            return stats::mann_whitney_u(g[1], g[0]).p;
        };
        sc.successive_rank_p = test(IntervalCategory::Successive);
        sc.sparse_rank_p = test(IntervalCategory::Sparse);
    }

    if (!out.releases.empty()) {
        const auto mix = category_mix(out.releases);
        if (mix.total > 0) sc.interval_mix = mix;
        int weekday = 0;
        for (const auto& r : out.releases) weekday += is_weekend(r.day) ? 0 : 1;
        sc.weekday_share = static_cast<double>(weekday) / static_cast<double>(out.releases.size());
    }
    return sc;
}

} // namespace cadence
