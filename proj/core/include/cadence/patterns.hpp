#pragma once

#include "cadence/data_model.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cadence {

inline constexpr int kDefaultWindow = 13;

// Releases in the `bits.size()` days following an anchoring release:
// bits[i] == 1 iff a release happened on anchor_day + i + 1.
struct WindowVector {
    std::string app_id;
    Day anchor_day{};
    std::vector<std::uint8_t> bits;
};

// One vector per release of a single app whose window ends on or before
// `span_end`.
[[nodiscard]] std::vector<WindowVector> extract_windows(std::span<const ReleaseEvent> events,
                                                        int window, Day span_end);

[[nodiscard]] std::vector<WindowVector> extract_windows(const AppHistory& history, int window);

// Vectors as dense rows of doubles, the input format of the embedding.
[[nodiscard]] std::vector<std::vector<double>> as_rows(std::span<const WindowVector> vectors);

struct Clustering;

// Element-wise mean of the vectors in each cluster, indexed by label.
[[nodiscard]] std::vector<std::vector<double>> aggregate_patterns(
    std::span<const WindowVector> vectors, const Clustering& clustering);

} // namespace cadence
