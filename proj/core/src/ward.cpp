#include "cadence/ward.hpp"

#include "cadence/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace cadence {

std::vector<Merge> ward_linkage(std::span<const Point2> points) {
    const std::size_t n = points.size();
    if (n == 0) {
        throw DomainError("Ward clustering of an empty point set");
    }
    // Squared Euclidean dissimilarities; under the Ward Lance-Williams update
    // they stay equal to twice the SSE increase of merging.
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = points[i][0] - points[j][0];
            const double dy = points[i][1] - points[j][1];
            d[i * n + j] = d[j * n + i] = dx * dx + dy * dy;
        }
    }
    std::vector<int> size(n, 1);
    std::vector<bool> active(n, true);

    struct Raw {
        std::size_t a, b;
        double dist;
    };
    std::vector<Raw> raw;
    raw.reserve(n - 1);
    std::vector<std::size_t> chain;
    std::size_t remaining = n;
    while (remaining > 1) {
        if (chain.empty()) {
            for (std::size_t i = 0; i < n; ++i) {
                if (active[i]) {
                    chain.push_back(i);
                    break;
                }
            }
        }
        while (true) {
            const std::size_t a = chain.back();
            const std::size_t prev = chain.size() >= 2 ? chain[chain.size() - 2] : n;
            // Prefer the previous chain element on ties so reciprocal pairs terminate.
            std::size_t best = prev;
            double best_d = prev < n ? d[a * n + prev] : std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < n; ++j) {
                if (!active[j] || j == a) continue;
                if (d[a * n + j] < best_d) {
                    best_d = d[a * n + j];
                    best = j;
                }
            }
            if (best == prev) break;
            chain.push_back(best);
        }
        const std::size_t a = chain.back();
        chain.pop_back();
        const std::size_t b = chain.back();
        chain.pop_back();
        const std::size_t keep = std::min(a, b);
        const std::size_t drop = std::max(a, b);
        const double dab = d[a * n + b];
        raw.push_back({keep, drop, dab});

        const double na = size[keep];
        const double nb = size[drop];
        for (std::size_t k = 0; k < n; ++k) {
            if (!active[k] || k == keep || k == drop) continue;
            const double nk = size[k];
            const double v = ((na + nk) * d[keep * n + k] + (nb + nk) * d[drop * n + k] - nk * dab) /
                             (na + nb + nk);
            d[keep * n + k] = d[k * n + keep] = v;
        }
        size[keep] += size[drop];
        active[drop] = false;
        --remaining;
    }

    std::stable_sort(raw.begin(), raw.end(),
                     [](const Raw& l, const Raw& r) { return l.dist < r.dist; });

    // Replay in height order, translating slot indices into dendrogram ids.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<int> id_of_root(n);
    std::iota(id_of_root.begin(), id_of_root.end(), 0);
    std::vector<int> root_size(n, 1);
    std::vector<Merge> merges;
    merges.reserve(raw.size());
    for (std::size_t s = 0; s < raw.size(); ++s) {
        const std::size_t ra = find(raw[s].a);
        const std::size_t rb = find(raw[s].b);
        Merge m;
        m.a = std::min(id_of_root[ra], id_of_root[rb]);
        m.b = std::max(id_of_root[ra], id_of_root[rb]);
        m.height = std::sqrt(std::max(0.0, raw[s].dist));
        m.size = root_size[ra] + root_size[rb];
        parent[rb] = ra;
        root_size[ra] = m.size;
        id_of_root[ra] = static_cast<int>(n + s);
        merges.push_back(m);
    }
    return merges;
}

Clustering ward_cluster(std::span<const Point2> points, int k) {
    const int n = static_cast<int>(points.size());
    if (k < 1 || k > n) {
        throw DomainError("cluster count " + std::to_string(k) + " outside [1, " +
                          std::to_string(n) + "]");
    }
    const auto merges = ward_linkage(points);
    // Union-find over dendrogram ids: points 0..n-1, clusters n..2n-2.
    std::vector<int> parent(static_cast<std::size_t>(2 * n - 1));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
    };
    for (int s = 0; s < n - k; ++s) {
        const auto& m = merges[static_cast<std::size_t>(s)];
        parent[static_cast<std::size_t>(m.a)] = n + s;
        parent[static_cast<std::size_t>(m.b)] = n + s;
    }
    Clustering c;
    c.k = k;
    c.labels.resize(static_cast<std::size_t>(n));
    std::map<int, int> label_of_root;
    for (int i = 0; i < n; ++i) {
        const int root = find(i);
        auto [it, inserted] = label_of_root.emplace(root, static_cast<int>(label_of_root.size()));
        c.labels[static_cast<std::size_t>(i)] = it->second;
    }
    c.merge_heights.reserve(merges.size());
    for (const auto& m : merges) c.merge_heights.push_back(m.height);
    return c;
}

} // namespace cadence
