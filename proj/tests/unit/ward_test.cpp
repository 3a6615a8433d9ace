#include "cadence/error.hpp"
#include "cadence/ward.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <random>
#include <set>

using namespace cadence;

namespace {

std::vector<Point2> random_points(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-10, 10);
    std::vector<Point2> pts(n);
    for (auto& p : pts) p = {u(rng), u(rng)};
    return pts;
}

// Member sets of the clusters formed by each merge.
std::vector<std::set<int>> merge_sets(const std::vector<Merge>& merges, std::size_t n) {
    std::map<int, std::set<int>> members;
    for (int i = 0; i < static_cast<int>(n); ++i) members[i] = {i};
    std::vector<std::set<int>> out;
    for (std::size_t s = 0; s < merges.size(); ++s) {
        auto joined = members.at(merges[s].a);
        joined.insert(members.at(merges[s].b).begin(), members.at(merges[s].b).end());
        members[static_cast<int>(n + s)] = joined;
        out.push_back(joined);
    }
    return out;
}

} // namespace

TEST(Ward, KEqualsNGivesSingletons) {
    std::mt19937_64 rng(1);
    const auto pts = random_points(12, rng);
    const auto c = ward_cluster(pts, 12);
    std::set<int> distinct(c.labels.begin(), c.labels.end());
    EXPECT_EQ(distinct.size(), 12u);
    EXPECT_EQ(c.k, 12);
}

TEST(Ward, KOutOfRange) {
    std::mt19937_64 rng(2);
    const auto pts = random_points(5, rng);
    EXPECT_THROW((void)ward_cluster(pts, 0), DomainError);
    EXPECT_THROW((void)ward_cluster(pts, 6), DomainError);
    EXPECT_THROW((void)ward_linkage(std::span<const Point2>{}), DomainError);
}

TEST(Ward, SeparatedBlobs) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<Point2> pts;
    std::vector<int> truth;
    for (int i = 0; i < 40; ++i) {
        const bool far = i % 3 == 0;
        pts.push_back({u(rng) + (far ? 100.0 : 0.0), u(rng)});
        truth.push_back(far);
    }
    const auto c = ward_cluster(pts, 2);
    EXPECT_TRUE(oracle::same_partition(c.labels, truth));
}

TEST(Ward, LabelsNumberedByFirstAppearance) {
    std::mt19937_64 rng(4);
    const auto pts = random_points(30, rng);
    const auto c = ward_cluster(pts, 4);
    int next = 0;
    for (int l : c.labels) {
        EXPECT_LE(l, next);
        if (l == next) ++next;
    }
    EXPECT_EQ(next, 4);
}

TEST(Ward, MatchesBruteForceOracle) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 300; ++trial) {
        const auto n = std::uniform_int_distribution<std::size_t>(2, 8)(rng);
        const auto pts = random_points(n, rng);
        const auto merges = ward_linkage(pts);
        const auto steps = oracle::ward_brute_force(pts);
        ASSERT_EQ(merges.size(), steps.size());
        const auto sets = merge_sets(merges, n);
        for (std::size_t s = 0; s < steps.size(); ++s) {
            EXPECT_EQ(sets[s], steps[s].merged) << "trial " << trial << " step " << s;
            EXPECT_NEAR(merges[s].height, std::sqrt(2.0 * steps[s].sse_increase), 1e-9);
            EXPECT_EQ(merges[s].size, static_cast<int>(steps[s].merged.size()));
        }
        for (int k = 1; k <= static_cast<int>(n); ++k) {
            // Cut after n - k oracle merges.
            std::vector<int> expect(n);
            std::iota(expect.begin(), expect.end(), 0);
            for (std::size_t s = 0; s < n - static_cast<std::size_t>(k); ++s) {
                const int root = *steps[s].merged.begin();
                for (int m : steps[s].merged) expect[static_cast<std::size_t>(m)] = root;
            }
            EXPECT_TRUE(oracle::same_partition(ward_cluster(pts, k).labels, expect));
        }
    }
}

TEST(Ward, MergeHeightsNondecreasing) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const auto n = std::uniform_int_distribution<std::size_t>(2, 300)(rng);
        auto pts = random_points(n, rng);
        // Duplicates and grid ties.
        for (std::size_t i = 0; i + 1 < n; i += 7) pts[i + 1] = pts[i];
        const auto c = ward_cluster(pts, 1);
        ASSERT_EQ(c.merge_heights.size(), n - 1);
        for (std::size_t i = 1; i < c.merge_heights.size(); ++i) {
            EXPECT_LE(c.merge_heights[i - 1], c.merge_heights[i]);
        }
    }
}
