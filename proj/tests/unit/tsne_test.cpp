#include "cadence/error.hpp"
#include "cadence/tsne.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace cadence;

namespace {

std::vector<std::vector<double>> random_rows(std::size_t n, std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<std::vector<double>> rows(n, std::vector<double>(dim));
    for (auto& r : rows) {
        for (auto& v : r) v = g(rng);
    }
    return rows;
}

double dist(const Point2& a, const Point2& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

// Half the rows all-zero, half with dense leading bits.
std::vector<std::vector<double>> two_populations(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> r(13, 0.0);
        if (i % 2 == 1) {
            for (std::size_t j = 0; j < 13; ++j) r[j] = std::bernoulli_distribution(j < 6 ? 0.9 : 0.1)(rng);
        } else {
            for (std::size_t j = 0; j < 13; ++j) r[j] = std::bernoulli_distribution(0.02)(rng);
        }
        rows.push_back(r);
    }
    return rows;
}

} // namespace

TEST(Tsne, DefaultPerplexity) {
    EXPECT_DOUBLE_EQ(default_perplexity(1000), 30.0);
    EXPECT_DOUBLE_EQ(default_perplexity(31), 10.0);
}

TEST(Tsne, RejectsTooFewPointsOrInfeasiblePerplexity) {
    EXPECT_THROW((void)tsne_embed(random_rows(4, 3, 1)), DomainError);
    TsneOptions opt;
    opt.perplexity = 10.0;
    EXPECT_THROW((void)tsne_embed(random_rows(20, 3, 1), opt), DomainError);
    auto ragged = random_rows(10, 3, 1);
    ragged[4].push_back(1.0);
    EXPECT_THROW((void)tsne_embed(ragged), DomainError);
}

TEST(Tsne, AffinitiesAreAJointDistribution) {
    const auto rows = random_rows(40, 5, 2);
    const auto p = tsne_affinities(rows, 10.0);
    ASSERT_EQ(p.size(), 1600u);
    EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
    for (std::size_t i = 0; i < 40; ++i) {
        EXPECT_EQ(p[i * 40 + i], 0.0);
        for (std::size_t j = 0; j < 40; ++j) {
            EXPECT_GE(p[i * 40 + j], 0.0);
            EXPECT_NEAR(p[i * 40 + j], p[j * 40 + i], 1e-18);
        }
    }
}

TEST(Tsne, BitReproducibleForSeed) {
    const auto rows = random_rows(60, 13, 3);
    TsneOptions opt;
    opt.seed = 42;
    opt.iterations = 400;
    const auto a = tsne_embed(rows, opt);
    const auto b = tsne_embed(rows, opt);
    ASSERT_EQ(a.points.size(), 60u);
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        EXPECT_EQ(a.points[i][0], b.points[i][0]);
        EXPECT_EQ(a.points[i][1], b.points[i][1]);
    }
    EXPECT_EQ(a.final_kl, b.final_kl);
    EXPECT_EQ(a.seed, 42u);
}

TEST(Tsne, KlDropsAfterExaggeration) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        TsneOptions opt;
        opt.seed = seed;
        const auto e = tsne_embed(random_rows(80, 6, seed), opt);
        EXPECT_GE(e.final_kl, 0.0);
        EXPECT_LE(e.final_kl, e.kl_after_exaggeration);
        const auto p = tsne_affinities(random_rows(80, 6, seed), default_perplexity(80));
        EXPECT_NEAR(tsne_kl(p, e.points), e.final_kl, 1e-9);
    }
}

TEST(Tsne, KlInvariantUnderRelabelling) {
    const auto rows = random_rows(50, 4, 9);
    TsneOptions opt;
    opt.iterations = 300;
    const auto base = tsne_embed(rows, opt);
    const double perplexity = default_perplexity(rows.size());
    const auto p = tsne_affinities(rows, perplexity);

    std::mt19937_64 rng(9);
    std::vector<std::size_t> perm(50);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::vector<double>> prow;
    std::vector<Point2> ppts;
    for (auto i : perm) {
        prow.push_back(rows[i]);
        ppts.push_back(base.points[i]);
    }
    const auto pp = tsne_affinities(prow, perplexity);
    for (std::size_t a = 0; a < 50; ++a) {
        for (std::size_t b = 0; b < 50; ++b) {
            EXPECT_NEAR(pp[a * 50 + b], p[perm[a] * 50 + perm[b]], 1e-12);
        }
    }
    EXPECT_NEAR(tsne_kl(pp, ppts), base.final_kl, 1e-9 * base.final_kl);
}

TEST(Tsne, SeparatesPlantedPopulations) {
    int separated = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        std::mt19937_64 rng(seed);
        const auto rows = two_populations(200, rng);
        TsneOptions opt;
        opt.seed = seed;
        const auto e = tsne_embed(rows, opt);
        double inter = 0, intra = 0;
        int n_inter = 0, n_intra = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (std::size_t j = i + 1; j < rows.size(); ++j) {
                const double d = dist(e.points[i], e.points[j]);
                if (i % 2 == j % 2) {
                    intra += d;
                    ++n_intra;
                } else {
                    inter += d;
                    ++n_inter;
                }
            }
        }
        separated += (inter / n_inter) > 2.0 * (intra / n_intra);
    }
    EXPECT_GE(separated, 95);
}
