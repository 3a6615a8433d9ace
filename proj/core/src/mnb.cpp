#include "cadence/mnb.hpp"

#include "cadence/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace cadence {

const char* to_string(EffectLabel label) {
    return label == EffectLabel::Positive ? "positive" : "negative";
}

MnbModel mnb_train(std::span<const FeatureVector> x, std::span<const EffectLabel> labels,
                   double alpha) {
    if (x.empty() || x.size() != labels.size()) {
        throw DomainError("naive Bayes needs one label per sample and at least one sample");
    }
    if (!(alpha > 0.0)) {
        throw DomainError("smoothing alpha must be > 0");
    }
    const std::size_t d = x.front().size();
    if (d == 0) {
        throw DomainError("feature vectors are empty");
    }
    std::array<std::vector<double>, 2> counts{std::vector<double>(d, 0.0),
                                              std::vector<double>(d, 0.0)};
    std::array<int, 2> class_n{0, 0};
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].size() != d) {
            throw DomainError("feature vectors differ in dimension");
        }
        const auto c = static_cast<std::size_t>(labels[i]);
        ++class_n[c];
        for (std::size_t f = 0; f < d; ++f) {
            if (x[i][f] < 0.0) {
                throw DomainError("naive Bayes features must be nonnegative");
            }
            counts[c][f] += x[i][f];
        }
    }
    MnbModel m;
    m.alpha = alpha;
    m.dimension = d;
    m.degenerate = class_n[0] == 0 || class_n[1] == 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t c = 0; c < 2; ++c) {
        m.log_prior[c] = class_n[c] > 0 ? std::log(class_n[c] / n)
                                        : -std::numeric_limits<double>::infinity();
        double total = 0.0;
        for (double v : counts[c]) total += v;
        const double denom = std::log(total + alpha * static_cast<double>(d));
        m.log_likelihood[c].resize(d);
        for (std::size_t f = 0; f < d; ++f) {
            m.log_likelihood[c][f] = std::log(counts[c][f] + alpha) - denom;
        }
    }
    return m;
}

MnbPrediction mnb_predict(const MnbModel& model, const FeatureVector& x) {
    if (x.size() != model.dimension) {
        throw DomainError("feature dimension " + std::to_string(x.size()) +
                          " does not match model dimension " + std::to_string(model.dimension));
    }
    std::array<double, 2> score{};
    for (std::size_t c = 0; c < 2; ++c) {
        score[c] = model.log_prior[c];
        if (std::isinf(score[c])) continue;
        for (std::size_t f = 0; f < x.size(); ++f) {
            if (x[f] != 0.0) score[c] += x[f] * model.log_likelihood[c][f];
        }
    }
    MnbPrediction p;
    if (std::isinf(score[0]) && std::isinf(score[1])) {
        throw UndefinedError("model has no trained class");
    }
    // Two-class log-sum-exp.
    const double hi = std::max(score[0], score[1]);
    const double e0 = std::exp(score[0] - hi);
    const double e1 = std::exp(score[1] - hi);
    p.positive_probability = e1 / (e0 + e1);
    p.label = score[1] > score[0] ? EffectLabel::Positive : EffectLabel::Negative;
    return p;
}

CvResult cross_validate(std::span<const FeatureVector> x, std::span<const EffectLabel> labels,
                        int k, double alpha, std::uint64_t seed) {
    if (k < 2) {
        throw DomainError("cross-validation needs k >= 2");
    }
    if (x.size() != labels.size() || x.size() < static_cast<std::size_t>(k)) {
        throw DomainError("cross-validation needs at least k labelled samples");
    }
    std::array<std::vector<std::size_t>, 2> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        by_class[static_cast<std::size_t>(labels[i])].push_back(i);
    }
    if (by_class[0].empty() || by_class[1].empty()) {
        throw DomainError("cross-validation needs both classes present");
    }
    std::mt19937_64 rng(seed);
    std::vector<int> fold_of(x.size());
    std::size_t dealt = 0;
    for (auto& members : by_class) {
        std::shuffle(members.begin(), members.end(), rng);
        for (std::size_t idx : members) {
            fold_of[idx] = static_cast<int>(dealt++ % static_cast<std::size_t>(k));
        }
    }

    CvResult result;
    double sum = 0.0;
    int used = 0;
    for (int f = 0; f < k; ++f) {
        std::vector<FeatureVector> train_x;
        std::vector<EffectLabel> train_y;
        std::vector<std::size_t> test;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (fold_of[i] == f) {
                test.push_back(i);
            } else {
                train_x.push_back(x[i]);
                train_y.push_back(labels[i]);
            }
        }
        const bool has_neg = std::find(train_y.begin(), train_y.end(), EffectLabel::Negative) != train_y.end();
        const bool has_pos = std::find(train_y.begin(), train_y.end(), EffectLabel::Positive) != train_y.end();
        if (!has_neg || !has_pos || test.empty()) {
            result.excluded_folds.push_back(f);
            result.fold_accuracy.push_back(std::numeric_limits<double>::quiet_NaN());
            result.warnings.push_back("fold " + std::to_string(f) +
                                      " excluded: training part lacks a class");
            continue;
        }
        const auto model = mnb_train(train_x, train_y, alpha);
        int correct = 0;
        for (std::size_t i : test) {
            correct += mnb_predict(model, x[i]).label == labels[i] ? 1 : 0;
        }
        const double acc = static_cast<double>(correct) / static_cast<double>(test.size());
        result.fold_accuracy.push_back(acc);
        sum += acc;
        ++used;
    }
    if (used == 0) {
        throw UndefinedError("every cross-validation fold was excluded");
    }
    result.accuracy = sum / used;
    return result;
}

} // namespace cadence
