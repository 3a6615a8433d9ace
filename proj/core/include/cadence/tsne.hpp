#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cadence {

using Point2 = std::array<double, 2>;

struct TsneOptions {
    std::optional<double> perplexity;  // default min(30, (n - 1) / 3)
    int iterations = 1000;
    std::uint64_t seed = 0;
    double learning_rate = 200.0;
    double exaggeration = 12.0;
    int exaggeration_iterations = 250;
    double initial_momentum = 0.5;
    double final_momentum = 0.8;
    // Starting coordinates; drawn from N(0, 1e-4) when empty.
    std::vector<Point2> initial;
};

struct Embedding {
    std::vector<Point2> points;
    double final_kl = 0.0;
    double kl_after_exaggeration = 0.0;
    std::uint64_t seed = 0;
};

[[nodiscard]] double default_perplexity(std::size_t n);

// Exact t-SNE on squared Euclidean input distances. Needs at least 5 rows and
// perplexity <= (n - 1) / 3.
[[nodiscard]] Embedding tsne_embed(const std::vector<std::vector<double>>& rows,
                                   const TsneOptions& options = {});

// Symmetrised input affinities P (row-major n x n), exposed for testing.
[[nodiscard]] std::vector<double> tsne_affinities(const std::vector<std::vector<double>>& rows,
                                                  double perplexity);

// KL(P || Q) for an embedding under the Student-t output kernel.
[[nodiscard]] double tsne_kl(std::span<const double> p, std::span<const Point2> points);

} // namespace cadence
