#include "cadence/analysis.hpp"

#include "cadence/error.hpp"

#include <algorithm>

namespace cadence {

AppAnalysis analyze_app(const AppHistory& history, const SegmentParams& params) {
    if (history.empty()) {
        throw DomainError("cannot analyse an empty history");
    }
    AppAnalysis a{history.app_id(), derive_releases(history), rating_series(history), {}, {}, {}};
    if (a.ratings.size() >= static_cast<std::size_t>(kMinSegmentPoints)) {
        a.segmentation = fit_segments(a.ratings, params.threshold);
        const double delta = params.min_slope_delta.value_or(default_min_slope_delta(a.segmentation));
        a.turning_points = turning_points(a.segmentation, delta, params.flat_eps);
        a.significant = link_significant_updates(a.releases, a.turning_points, params.lag_window);
    }
    return a;
}

double trend_slope_at(const SegmentationResult& seg, Day day) {
    const auto idx = segment_index_at(seg, day);
    if (!idx) {
        throw DomainError("day " + format_iso_date(day) + " outside the segmented span");
    }
    return seg.segments[*idx].slope;
}

double trend_change(const SegmentationResult& seg, Day day, int lag) {
    const Day later = std::min(add_days(day, lag), seg.segments.back().end_day);
    return trend_slope_at(seg, later) - trend_slope_at(seg, day);
}

std::vector<Tokens> release_documents(std::span<const AppAnalysis> apps) {
    std::vector<Tokens> docs;
    for (const auto& a : apps) {
        for (const auto& r : a.releases) {
            if (r.whats_new) docs.push_back(preprocess(*r.whats_new));
        }
    }
    return docs;
}

std::vector<EffectSample> build_effect_samples(std::span<const AppHistory> histories,
                                               std::span<const AppAnalysis> apps,
                                               const Vocabulary& vocab,
                                               const SampleParams& params) {
    if (histories.size() != apps.size()) {
        throw DomainError("histories and analyses differ in count");
    }
    std::vector<EffectSample> samples;
    for (std::size_t i = 0; i < apps.size(); ++i) {
        const auto& h = histories[i];
        const auto& a = apps[i];
        if (a.segmentation.segments.empty()) continue;
        for (const auto& r : a.releases) {
            if (!r.interval_days) continue;
            const auto* snap = h.at(r.day);
            if (!snap || !snap->rank) continue;
            const auto label = params.rule == LabelRule::RatingDelta
                                   ? label_effect(a.ratings, r.day, params.lag_window)
                                   : label_effect_by_slope(a.segmentation, r.day, params.lag_window);
            if (!label) continue;
            EffectSample s;
            s.app_id = a.app_id;
            s.day = r.day;
            s.rank = *snap->rank;
            s.interval = *r.interval_days;
            s.slope = trend_slope_at(a.segmentation, r.day);
            if (r.whats_new && vocab.size() > 0) s.terms = tfidf(preprocess(*r.whats_new), vocab);
            s.label = *label;
            samples.push_back(std::move(s));
        }
    }
    return samples;
}

TermImportance term_importance(std::span<const AppAnalysis> apps, const Vocabulary& vocab,
                               IntervalCategory group, const TermParams& params) {
    TermImportance out;
    out.group = to_string(group);
    std::vector<TermVector> x;
    std::vector<double> y;
    for (const auto& a : apps) {
        if (a.segmentation.segments.empty()) continue;
        const std::optional<std::string>* previous = nullptr;
        for (const auto& r : a.releases) {
            const bool unchanged = previous && *previous && r.whats_new && **previous == *r.whats_new;
            previous = &r.whats_new;
            if (unchanged || !r.whats_new || !r.category || *r.category != group) continue;
            x.push_back(tfidf(preprocess(*r.whats_new), vocab));
            y.push_back(trend_change(a.segmentation, r.day, params.lag_window));
        }
    }
    if (x.size() < static_cast<std::size_t>(std::max(params.folds, 2))) {
        throw UndefinedError(std::string("too few ") + to_string(group) +
                             " releases with changed notes for term regression");
    }
    const auto terms = top_terms(x, params.top_terms);
    if (terms.empty()) {
        throw UndefinedError("no informative terms for the regression");
    }
    const auto design = design_from_terms(x, terms);
    const auto cv = lasso_cv(design, y, params.folds, params.n_lambdas, params.lambda_min_ratio,
                             params.seed);
    out.lambda = cv.best_lambda;
    for (std::size_t j = 0; j < terms.size(); ++j) {
        if (cv.fit.coef[j] != 0.0) {
            out.coefficients[vocab.terms()[static_cast<std::size_t>(terms[j])]] = cv.fit.coef[j];
        }
    }
    return out;
}

} // namespace cadence
