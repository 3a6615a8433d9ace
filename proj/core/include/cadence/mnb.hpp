#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cadence {

enum class EffectLabel { Negative = 0, Positive = 1 };

[[nodiscard]] const char* to_string(EffectLabel label);

using FeatureVector = std::vector<double>;  // dense, nonnegative

struct MnbModel {
    double alpha = 1.0;
    std::size_t dimension = 0;
    std::array<double, 2> log_prior{};  // -inf for a class absent from training
    std::array<std::vector<double>, 2> log_likelihood;
    bool degenerate = false;            // trained on a single class
};

// Multinomial naive Bayes with Laplace smoothing; fractional counts accepted.
[[nodiscard]] MnbModel mnb_train(std::span<const FeatureVector> x,
                                 std::span<const EffectLabel> labels, double alpha = 1.0);

struct MnbPrediction {
    EffectLabel label = EffectLabel::Negative;  // Positive only when strictly more probable
    double positive_probability = 0.0;
};

[[nodiscard]] MnbPrediction mnb_predict(const MnbModel& model, const FeatureVector& x);

struct CvResult {
    double accuracy = 0.0;               // mean over the folds used
    std::vector<double> fold_accuracy;   // NaN for excluded folds
    std::vector<int> excluded_folds;
    std::vector<std::string> warnings;
};

// Seeded stratified k-fold cross-validation. Folds whose training part lacks
// a class are excluded with a warning.
[[nodiscard]] CvResult cross_validate(std::span<const FeatureVector> x,
                                      std::span<const EffectLabel> labels, int k,
                                      double alpha = 1.0, std::uint64_t seed = 0);

} // namespace cadence
