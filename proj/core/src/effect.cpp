#include "cadence/effect.hpp"

#include "cadence/error.hpp"
#include "cadence/stats.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace cadence {

std::optional<EffectLabel> label_effect(const Series& ratings, Day release_day, int lag_window) {
    if (lag_window < 1) {
        throw DomainError("labelling window must be >= 1");
    }
    const int idx = days_between(ratings.origin(), release_day);
    const int n = static_cast<int>(ratings.size());
    if (idx - lag_window < 0 || idx + lag_window >= n) {
        return std::nullopt;
    }
    double before = 0.0;
    for (int i = idx - lag_window; i <= idx; ++i) before += ratings[static_cast<std::size_t>(i)];
    before /= lag_window + 1;
    double after = 0.0;
    for (int i = idx + 1; i <= idx + lag_window; ++i) after += ratings[static_cast<std::size_t>(i)];
    after /= lag_window;
    const double delta = after - before;
    if (std::fabs(delta) <= 1e-12) return std::nullopt;
    return delta > 0.0 ? EffectLabel::Positive : EffectLabel::Negative;
}

std::optional<EffectLabel> label_effect(const AppHistory& history, const ReleaseEvent& release,
                                        int lag_window) {
    if (history.empty()) return std::nullopt;
    return label_effect(rating_series(history), release.day, lag_window);
}

std::optional<EffectLabel> label_effect_by_slope(const SegmentationResult& seg, Day release_day,
                                                 int lag_window, double eps) {
    const auto before = segment_index_at(seg, release_day);
    const auto after = segment_index_at(seg, add_days(release_day, lag_window));
    if (!before || !after) return std::nullopt;
    const double delta = seg.segments[*after].slope - seg.segments[*before].slope;
    if (std::fabs(delta) < eps) return std::nullopt;
    return delta > 0.0 ? EffectLabel::Positive : EffectLabel::Negative;
}

int rank_bucket(int rank) {
    if (rank < 1) throw DomainError("rank must be >= 1, got " + std::to_string(rank));
    if (rank <= 10) return 0;
    if (rank <= 50) return 1;
    if (rank <= 150) return 2;
    if (rank <= 300) return 3;
    if (rank <= kTopListSize) return 4;
    return 5;
}

int rank_tier(int rank) {
    const int rb = rank_bucket(rank);
    return rb <= 2 ? 0 : (rb == 3 ? 1 : 2);
}

int interval_fine_bin(int t) {
    if (t < 1) throw DomainError("interval must be >= 1, got " + std::to_string(t));
    if (t <= 5) return t - 1;
    if (t <= 10) return 5;
    if (t <= 20) return 6;
    if (t <= 40) return 7;
    return 8;
}

int slope_bucket(double s, double cut, double flat_eps) {
    if (!std::isfinite(s)) throw DomainError("slope must be finite");
    if (std::fabs(s) <= flat_eps) return 2;
    if (s < 0.0) return s < -cut ? 0 : 1;
    return s > cut ? 4 : 3;
}

std::size_t BucketSpec::dimension() const {
    std::size_t d = 0;
    if (features.rank) d += kRankBuckets;
    if (features.interval) d += 3 + kIntervalFineBins;
    if (features.slope) d += kSlopeBuckets;
    if (features.rank_interval) d += kRankTiers * 3;
    if (features.terms) d += n_terms;
    return d;
}

std::vector<std::string> BucketSpec::feature_names(const Vocabulary* vocab) const {
    static const char* const ranks[] = {"1-10", "11-50", "51-150", "151-300", "301-540", ">540"};
    static const char* const cats[] = {"successive", "normal", "sparse"};
    static const char* const fine[] = {"1", "2", "3", "4", "5", "6-10", "11-20", "21-40", ">40"};
    static const char* const slopes[] = {"strong-", "weak-", "~0", "weak+", "strong+"};
    std::vector<std::string> names;
    if (features.rank) {
        for (const char* r : ranks) names.push_back(std::string("rank:") + r);
    }
    if (features.interval) {
        for (const char* c : cats) names.push_back(std::string("interval:") + c);
        for (const char* f : fine) names.push_back(std::string("interval_days:") + f);
    }
    if (features.slope) {
        for (const char* s : slopes) names.push_back(std::string("slope:") + s);
    }
    if (features.rank_interval) {
        static const char* const tiers[] = {"1-150", "151-300", ">300"};
        for (const char* r : tiers) {
            for (const char* c : cats) names.push_back(std::string("rank_x_interval:") + r + "/" + c);
        }
    }
    if (features.terms) {
        for (std::size_t i = 0; i < n_terms; ++i) {
            names.push_back("term:" + (vocab && i < vocab->size() ? vocab->terms()[i]
                                                                  : std::to_string(i)));
        }
    }
    return names;
}

double fit_slope_cut(std::span<const EffectSample> samples) {
    if (samples.empty()) {
        throw UndefinedError("slope cut needs at least one sample");
    }
    std::vector<double> mags;
    mags.reserve(samples.size());
    for (const auto& s : samples) mags.push_back(std::fabs(s.slope));
    return stats::median(std::move(mags));
}

FeatureVector featurize(int rank, int interval, double slope, const TermVector& terms,
                        const BucketSpec& spec) {
    FeatureVector x(spec.dimension(), 0.0);
    std::size_t off = 0;
    const int rb = rank_bucket(rank);
    const int cat = static_cast<int>(categorize_interval(interval));
    if (spec.features.rank) {
        x[off + static_cast<std::size_t>(rb)] = 1.0;
        off += kRankBuckets;
    }
    if (spec.features.interval) {
        x[off + static_cast<std::size_t>(cat)] = 1.0;
        x[off + 3 + static_cast<std::size_t>(interval_fine_bin(interval))] = 1.0;
        off += 3 + kIntervalFineBins;
    }
    if (spec.features.slope) {
        x[off + static_cast<std::size_t>(slope_bucket(slope, spec.slope_cut, spec.flat_eps))] = 1.0;
        off += kSlopeBuckets;
    }
    if (spec.features.rank_interval) {
        x[off + static_cast<std::size_t>(rank_tier(rank) * 3 + cat)] = 1.0;
        off += kRankTiers * 3;
    }
    if (spec.features.terms) {
        for (const auto& [idx, w] : terms.weights) {
            if (idx < 0 || static_cast<std::size_t>(idx) >= spec.n_terms) {
                throw DomainError("term index " + std::to_string(idx) + " outside the vocabulary");
            }
            x[off + static_cast<std::size_t>(idx)] = w;
        }
    }
    return x;
}

FeatureVector featurize(const EffectSample& sample, const BucketSpec& spec) {
    return featurize(sample.rank, sample.interval, sample.slope, sample.terms, spec);
}

Recommendation optimize_interval(const MnbModel& model, const BucketSpec& spec, int rank,
                                 double slope, const TermVector& terms, int t_min, int t_max) {
    if (t_min < 1 || t_max < t_min) {
        throw DomainError("interval range [" + std::to_string(t_min) + ", " +
                          std::to_string(t_max) + "] is empty or below 1");
    }
    Recommendation rec;
    rec.t_min = t_min;
    rec.t_max = t_max;
    rec.predicted_positive_probability = -1.0;
    for (int t = t_min; t <= t_max; ++t) {
        const double p = mnb_predict(model, featurize(rank, t, slope, terms, spec)).positive_probability;
        rec.probability_by_t.push_back(p);
        if (p > rec.predicted_positive_probability) {
            rec.predicted_positive_probability = p;
            rec.t_best = t;
        }
    }
    return rec;
}

namespace {

std::string fmt_double(double v) {
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s, std::size_t line) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
        throw ParseError("bad number '" + s + "' in model file", line);
    }
    return v;
}

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find('\t', start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

} // namespace

void save_model(std::ostream& out, const EffectModel& model) {
    const auto& m = model.mnb;
    const auto& spec = model.spec;
    const auto& f = spec.features;
    out << "cadence-effect-model\t" << kModelFormatVersion << '\n';
    out << "alpha\t" << fmt_double(m.alpha) << '\n';
    out << "dimension\t" << m.dimension << '\n';
    out << "degenerate\t" << (m.degenerate ? 1 : 0) << '\n';
    out << "slope_cut\t" << fmt_double(spec.slope_cut) << '\n';
    out << "flat_eps\t" << fmt_double(spec.flat_eps) << '\n';
    out << "features\t" << f.rank << '\t' << f.interval << '\t' << f.slope << '\t' << f.terms << '\t'
        << f.rank_interval << '\n';
    out << "stopwords\t" << kStopwordsVersion << '\n';
    out << "vocabulary\t" << model.vocabulary.size() << '\t' << model.vocabulary.n_documents()
        << '\n';
    for (std::size_t i = 0; i < model.vocabulary.size(); ++i) {
        out << "term\t" << model.vocabulary.terms()[i] << '\t'
            << model.vocabulary.document_frequency()[i] << '\n';
    }
    out << "prior\tnegative\t" << fmt_double(m.log_prior[0]) << '\n';
    out << "prior\tpositive\t" << fmt_double(m.log_prior[1]) << '\n';
    const auto names = spec.feature_names(&model.vocabulary);
    for (std::size_t i = 0; i < m.dimension; ++i) {
        out << "feature\t" << names[i] << '\t' << fmt_double(m.log_likelihood[0][i]) << '\t'
            << fmt_double(m.log_likelihood[1][i]) << '\n';
    }
    out << "end\n";
}

EffectModel load_model(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    auto next = [&](const char* key, std::size_t fields) {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty()) break;
        }
        if (!in && line.empty()) {
            throw ParseError(std::string("model file truncated before '") + key + "'", line_no);
        }
        auto parts = split_tabs(line);
        if (parts.front() != key || parts.size() != fields) {
            throw ParseError(std::string("expected '") + key + "' record", line_no);
        }
        return parts;
    };
    auto to_size = [&](const std::string& s) {
        const double v = parse_double(s, line_no);
        if (v < 0 || v != std::floor(v)) throw ParseError("expected a count", line_no);
        return static_cast<std::size_t>(v);
    };

    auto header = next("cadence-effect-model", 2);
    if (header[1] != std::to_string(kModelFormatVersion)) {
        throw ParseError("model format version " + header[1] + " is not supported (expected " +
                             std::to_string(kModelFormatVersion) + ")",
                         line_no);
    }
    EffectModel model;
    model.mnb.alpha = parse_double(next("alpha", 2)[1], line_no);
    model.mnb.dimension = to_size(next("dimension", 2)[1]);
    model.mnb.degenerate = next("degenerate", 2)[1] == "1";
    model.spec.slope_cut = parse_double(next("slope_cut", 2)[1], line_no);
    model.spec.flat_eps = parse_double(next("flat_eps", 2)[1], line_no);
    const auto feats = next("features", 6);
    auto flag = [&](const std::string& s) {
        if (s != "0" && s != "1") throw ParseError("feature flags must be 0 or 1", line_no);
        return s == "1";
    };
    model.spec.features = {flag(feats[1]), flag(feats[2]), flag(feats[3]), flag(feats[4]),
                           flag(feats[5])};
    const auto stop = next("stopwords", 2);
    if (stop[1] != kStopwordsVersion) {
        throw ParseError("model was trained with stop-word list " + stop[1] + ", this build ships " +
                             kStopwordsVersion,
                         line_no);
    }
    const auto vocab_hdr = next("vocabulary", 3);
    const std::size_t n_terms = to_size(vocab_hdr[1]);
    const int n_docs = static_cast<int>(to_size(vocab_hdr[2]));
    std::vector<std::string> terms;
    std::vector<int> df;
    for (std::size_t i = 0; i < n_terms; ++i) {
        const auto t = next("term", 3);
        terms.push_back(t[1]);
        df.push_back(static_cast<int>(to_size(t[2])));
    }
    try {
        model.vocabulary = n_terms ? Vocabulary(std::move(terms), std::move(df), n_docs) : Vocabulary();
    } catch (const DomainError& e) {
        throw ParseError(e.what(), line_no);
    }
    model.spec.n_terms = model.spec.features.terms ? n_terms : 0;
    if (model.spec.dimension() != model.mnb.dimension) {
        throw ParseError("feature dimension does not match the bucket layout", line_no);
    }
    model.mnb.log_prior[0] = parse_double(next("prior", 3)[2], line_no);
    model.mnb.log_prior[1] = parse_double(next("prior", 3)[2], line_no);
    for (auto& row : model.mnb.log_likelihood) row.resize(model.mnb.dimension);
    for (std::size_t i = 0; i < model.mnb.dimension; ++i) {
        const auto f = next("feature", 4);
        model.mnb.log_likelihood[0][i] = parse_double(f[2], line_no);
        model.mnb.log_likelihood[1][i] = parse_double(f[3], line_no);
    }
    next("end", 1);
    return model;
}

} // namespace cadence

namespace cadence {

UpdateGroups update_groups(std::span<const EffectSample> samples) {
    UpdateGroups g;
    for (const auto& s : samples) {
        const auto cat = static_cast<std::size_t>(categorize_interval(s.interval));
        g.ranks[cat][static_cast<std::size_t>(s.label)].push_back(static_cast<double>(s.rank));
    }
    return g;
}

} // namespace cadence
