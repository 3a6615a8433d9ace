#pragma once

#include "cadence/tsne.hpp"

#include <span>
#include <vector>

namespace cadence {

// One agglomeration step. Ids below n are points; the cluster formed by step
// s gets id n + s.
struct Merge {
    int a = 0;
    int b = 0;
    double height = 0.0;  // sqrt(2 * increase in within-cluster SSE)
    int size = 0;
};

struct Clustering {
    std::vector<int> labels;           // in [0, k), numbered by first appearance
    std::vector<double> merge_heights; // nondecreasing, length n - 1
    int k = 0;
};

// Full Ward dendrogram via the nearest-neighbour chain and Lance-Williams
// updates, merges ordered by height.
[[nodiscard]] std::vector<Merge> ward_linkage(std::span<const Point2> points);

// Cut of the Ward dendrogram into k clusters.
[[nodiscard]] Clustering ward_cluster(std::span<const Point2> points, int k);

} // namespace cadence
