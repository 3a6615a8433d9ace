#include "cadence/error.hpp"
#include "cadence/lasso.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>

using namespace cadence;

namespace {

Design gaussian_design(std::size_t n, std::size_t p, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Design d;
    d.rows = n;
    d.columns.assign(p, std::vector<double>(n));
    for (auto& c : d.columns) {
        for (auto& v : c) v = g(rng);
    }
    return d;
}

std::vector<double> respond(const Design& x, const std::vector<double>& beta, double intercept,
                            double sigma, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, sigma);
    std::vector<double> y(x.rows, intercept);
    for (std::size_t j = 0; j < x.cols(); ++j) {
        for (std::size_t i = 0; i < x.rows; ++i) y[i] += beta[j] * x.columns[j][i];
    }
    for (auto& v : y) v += g(rng);
    return y;
}

// Columns 1..p of a Sylvester Hadamard matrix: +/-1 entries, mean zero, unit
// population variance, mutually orthogonal.
Design hadamard_design(std::size_t order, std::size_t p) {
    std::vector<std::vector<int>> h{{1}};
    while (h.size() < order) {
        const std::size_t m = h.size();
        std::vector<std::vector<int>> next(2 * m, std::vector<int>(2 * m));
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                next[i][j] = next[i][j + m] = next[i + m][j] = h[i][j];
                next[i + m][j + m] = -h[i][j];
            }
        }
        h = next;
    }
    Design d;
    d.rows = order;
    for (std::size_t j = 1; j <= p; ++j) {
        std::vector<double> col(order);
        for (std::size_t i = 0; i < order; ++i) col[i] = h[i][j];
        d.columns.push_back(col);
    }
    return d;
}

std::set<std::size_t> support(const std::vector<double>& coef) {
    std::set<std::size_t> s;
    for (std::size_t j = 0; j < coef.size(); ++j) {
        if (coef[j] != 0.0) s.insert(j);
    }
    return s;
}

} // namespace

TEST(Lasso, LargeLambdaKillsEverything) {
    std::mt19937_64 rng(1);
    const auto x = gaussian_design(50, 8, rng);
    const auto y = respond(x, {1, -2, 0, 0, 3, 0, 0, 1}, 0.5, 0.3, rng);
    const double lmax = lasso_lambda_max(x, y);
    for (double f : {1.0, 1.5, 100.0}) {
        const auto fit = lasso_fit(x, y, f * lmax);
        for (double c : fit.coef) EXPECT_EQ(c, 0.0);
        EXPECT_NEAR(fit.intercept, oracle::ols({}, y).first, 1e-12);
    }
    const auto below = lasso_fit(x, y, 0.99 * lmax);
    EXPECT_FALSE(support(below.coef).empty());
}

TEST(Lasso, ZeroLambdaMatchesOls) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        std::mt19937_64 rng(seed);
        const auto x = gaussian_design(120, 10, rng);
        std::vector<double> beta(10);
        for (auto& b : beta) b = std::normal_distribution<double>(0, 2)(rng);
        const auto y = respond(x, beta, 1.5, 0.5, rng);
        const auto fit = lasso_fit(x, y, 0.0, 1e-13, 100000);
        const auto [b0, b] = oracle::ols(x.columns, y);
        for (std::size_t j = 0; j < b.size(); ++j) EXPECT_NEAR(fit.coef[j], b[j], 1e-6);
        EXPECT_NEAR(fit.intercept, b0, 1e-6);
    }
}

TEST(Lasso, OrthonormalDesignIsSoftThreshold) {
    std::mt19937_64 rng(3);
    const auto x = hadamard_design(64, 12);
    std::vector<double> beta(12);
    for (auto& b : beta) b = std::uniform_real_distribution<double>(-2, 2)(rng);
    const auto y = respond(x, beta, 0.7, 0.4, rng);
    const auto [b0, ols] = oracle::ols(x.columns, y);
    for (double lambda : {0.0, 0.05, 0.3, 0.9, 1.7}) {
        const auto fit = lasso_fit(x, y, lambda);
        for (std::size_t j = 0; j < ols.size(); ++j) {
            EXPECT_NEAR(fit.coef[j], oracle::soft_threshold(ols[j], lambda), 1e-12)
                << "lambda " << lambda << " column " << j;
        }
        EXPECT_NEAR(fit.intercept, b0, 1e-12);
    }
}

TEST(Lasso, ObjectiveNonincreasingPerSweep) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        std::mt19937_64 rng(seed);
        auto x = gaussian_design(80, 30, rng);
        // Correlated columns make coordinate descent take many sweeps.
        for (std::size_t j = 1; j < x.cols(); ++j) {
            for (std::size_t i = 0; i < x.rows; ++i) x.columns[j][i] += 0.8 * x.columns[j - 1][i];
        }
        std::vector<double> beta(30, 0.0);
        beta[2] = 1.0;
        beta[7] = -1.5;
        const auto y = respond(x, beta, 0.0, 1.0, rng);
        const auto fit = lasso_fit(x, y, 0.02 * lasso_lambda_max(x, y));
        ASSERT_GE(fit.objective.size(), 2u);
        for (std::size_t s = 1; s < fit.objective.size(); ++s) {
            EXPECT_LE(fit.objective[s], fit.objective[s - 1] + 1e-15);
        }
        EXPECT_EQ(static_cast<int>(fit.objective.size()), fit.sweeps);
    }
}

TEST(Lasso, SupportShrinksAlongLambdaPath) {
    std::mt19937_64 rng(5);
    const auto x = gaussian_design(200, 20, rng);
    std::vector<double> beta(20, 0.0);
    for (std::size_t j = 0; j < 6; ++j) beta[j * 3] = 0.3 * static_cast<double>(j + 1);
    const auto y = respond(x, beta, 0.0, 1.0, rng);
    const double lmax = lasso_lambda_max(x, y);
    std::size_t prev = 1000;
    for (int k = 0; k < 10; ++k) {
        const double lambda = lmax * std::pow(10.0, -3.0 + 3.0 * k / 9.0);
        const auto s = support(lasso_fit(x, y, lambda).coef);
        EXPECT_LE(s.size(), prev);
        prev = s.size();
    }
    EXPECT_EQ(prev, 0u);
}

TEST(Lasso, PlantedSupportRecovery) {
    const std::size_t n = 500, p = 200;
    const double sigma = 1.0;
    int true_pos = 0, selected = 0, planted = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        std::mt19937_64 rng(seed);
        const auto x = gaussian_design(n, p, rng);
        std::vector<std::size_t> idx(p);
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), rng);
        std::vector<double> beta(p, 0.0);
        std::set<std::size_t> truth;
        for (int k = 0; k < 5; ++k) {
            beta[idx[static_cast<std::size_t>(k)]] = (k % 2 ? -1.0 : 1.0);
            truth.insert(idx[static_cast<std::size_t>(k)]);
        }
        const auto y = respond(x, beta, 2.0, sigma, rng);
        const double lambda = sigma * std::sqrt(2.0 * std::log(static_cast<double>(p)) / n);
        const auto s = support(lasso_fit(x, y, lambda).coef);
        planted += 5;
        selected += static_cast<int>(s.size());
        for (auto j : s) true_pos += truth.count(j);
    }
    EXPECT_GE(static_cast<double>(true_pos) / selected, 0.9);
    EXPECT_GE(static_cast<double>(true_pos) / planted, 0.9);
}

TEST(Lasso, NonConvergenceCarriesLastIterate) {
    std::mt19937_64 rng(7);
    auto x = gaussian_design(60, 10, rng);
    for (std::size_t i = 0; i < x.rows; ++i) x.columns[1][i] += 0.99 * x.columns[0][i];
    const auto y = respond(x, {1, 1, 0, 0, 0, 0, 0, 0, 0, 0}, 0.0, 0.1, rng);
    try {
        (void)lasso_fit(x, y, 1e-4, 1e-14, 2);
        FAIL() << "expected non-convergence";
    } catch (const LassoConvergenceError& e) {
        EXPECT_EQ(e.kind(), "convergence");
        EXPECT_EQ(e.last_iterate().coef.size(), 10u);
        EXPECT_EQ(e.last_iterate().sweeps, 2);
    }
}

TEST(Lasso, ConstantColumnGetsZero) {
    std::mt19937_64 rng(9);
    auto x = gaussian_design(40, 3, rng);
    x.columns[1].assign(40, 2.5);
    const auto y = respond(x, {1, 0, -1}, 0.0, 0.1, rng);
    const auto fit = lasso_fit(x, y, 0.0);
    EXPECT_EQ(fit.coef[1], 0.0);
    EXPECT_NEAR(fit.coef[0], 1.0, 0.1);
}

TEST(Lasso, RejectsShapeMismatch) {
    std::mt19937_64 rng(11);
    const auto x = gaussian_design(10, 2, rng);
    const std::vector<double> y(9, 0.0);
    EXPECT_THROW((void)lasso_fit(x, y, 0.1), DomainError);
}

TEST(LassoCv, PathAndReproducibility) {
    std::mt19937_64 rng(13);
    const auto x = gaussian_design(150, 15, rng);
    std::vector<double> beta(15, 0.0);
    beta[0] = 1.0;
    beta[4] = -0.7;
    const auto y = respond(x, beta, 0.0, 0.5, rng);
    const auto a = lasso_cv(x, y, 5, 20, 1e-3, 3);
    const auto b = lasso_cv(x, y, 5, 20, 1e-3, 3);
    ASSERT_EQ(a.lambdas.size(), 20u);
    EXPECT_NEAR(a.lambdas.front(), lasso_lambda_max(x, y), 1e-12);
    EXPECT_NEAR(a.lambdas.back(), 1e-3 * a.lambdas.front(), 1e-12);
    for (std::size_t i = 1; i < a.lambdas.size(); ++i) EXPECT_LT(a.lambdas[i], a.lambdas[i - 1]);
    EXPECT_EQ(a.cv_error, b.cv_error);
    EXPECT_EQ(a.best_lambda, b.best_lambda);
    const auto best = std::min_element(a.cv_error.begin(), a.cv_error.end()) - a.cv_error.begin();
    EXPECT_EQ(a.best_lambda, a.lambdas[static_cast<std::size_t>(best)]);
    EXPECT_EQ(a.fit.lambda, a.best_lambda);
    const auto s = support(a.fit.coef);
    EXPECT_TRUE(s.count(0));
    EXPECT_TRUE(s.count(4));
}

TEST(DesignFromTerms, ColumnsFollowIndices) {
    TermVector a, b;
    a.weights = {{0, 1.5}, {3, 2.0}};
    b.weights = {{3, 0.5}};
    const std::vector<TermVector> vs{a, b};
    const std::vector<int> idx{3, 0, 7};
    const auto d = design_from_terms(vs, idx);
    EXPECT_EQ(d.rows, 2u);
    ASSERT_EQ(d.cols(), 3u);
    EXPECT_EQ(d.columns[0], (std::vector<double>{2.0, 0.5}));
    EXPECT_EQ(d.columns[1], (std::vector<double>{1.5, 0.0}));
    EXPECT_EQ(d.columns[2], (std::vector<double>{0.0, 0.0}));
}

TEST(TermQuadrants, SignPairs) {
    TermImportance succ{"successive", 0.1, {{"crash", 0.4}, {"theme", -0.2}, {"sync", 0.3}, {"icon", 0.1}}};
    TermImportance sparse{"sparse", 0.1, {{"crash", -0.5}, {"theme", 0.6}, {"sync", 0.2}, {"font", 0.9}}};
    const auto rows = term_quadrants(succ, sparse);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].term, "crash");
    EXPECT_EQ(rows[0].quadrant, Quadrant::MinusPlus);
    EXPECT_STREQ(to_string(rows[0].quadrant), "-+");
    EXPECT_EQ(rows[1].term, "sync");
    EXPECT_EQ(rows[1].quadrant, Quadrant::PlusPlus);
    EXPECT_EQ(rows[2].term, "theme");
    EXPECT_EQ(rows[2].quadrant, Quadrant::PlusMinus);
    EXPECT_DOUBLE_EQ(rows[2].sparse, 0.6);
    EXPECT_DOUBLE_EQ(rows[2].successive, -0.2);
}

TEST(TermQuadrants, ZeroedTermsExcluded) {
    TermImportance succ{"successive", 0.1, {{"a", 0.0}, {"b", -0.1}}};
    TermImportance sparse{"sparse", 0.1, {{"a", 0.3}, {"b", -0.2}}};
    const auto rows = term_quadrants(succ, sparse);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].quadrant, Quadrant::MinusMinus);
}
