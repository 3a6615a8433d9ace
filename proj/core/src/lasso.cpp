#include "cadence/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace cadence {

Design design_from_terms(std::span<const TermVector> vectors, std::span<const int> term_indices) {
    Design d;
    d.rows = vectors.size();
    d.columns.assign(term_indices.size(), std::vector<double>(vectors.size(), 0.0));
    for (std::size_t c = 0; c < term_indices.size(); ++c) {
        for (std::size_t r = 0; r < vectors.size(); ++r) {
            d.columns[c][r] = vectors[r].weight(term_indices[c]);
        }
    }
    return d;
}

namespace {

struct Standardised {
    std::vector<std::vector<double>> z;  // centred, unit population sd
    std::vector<double> mean;
    std::vector<double> sd;              // 0 for constant columns
    std::vector<double> yc;
    double ymean = 0.0;
};

Standardised standardise(const Design& x, std::span<const double> y) {
    const std::size_t n = x.rows;
    const double dn = static_cast<double>(n);
    Standardised s;
    s.ymean = std::accumulate(y.begin(), y.end(), 0.0) / dn;
    s.yc.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.yc[i] = y[i] - s.ymean;
    s.z.resize(x.cols());
    s.mean.resize(x.cols());
    s.sd.resize(x.cols());
    for (std::size_t j = 0; j < x.cols(); ++j) {
        const auto& col = x.columns[j];
        const double m = std::accumulate(col.begin(), col.end(), 0.0) / dn;
        double ss = 0.0;
        for (double v : col) ss += (v - m) * (v - m);
        const double sd = std::sqrt(ss / dn);
        s.mean[j] = m;
        s.sd[j] = sd > 1e-12 * std::max(1.0, std::fabs(m)) ? sd : 0.0;
        s.z[j].resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            s.z[j][i] = s.sd[j] > 0.0 ? (col[i] - m) / s.sd[j] : 0.0;
        }
    }
    return s;
}

double soft_threshold(double v, double t) {
    if (v > t) return v - t;
    if (v < -t) return v + t;
    return 0.0;
}

void check_shapes(const Design& x, std::span<const double> y) {
    if (y.size() != x.rows || x.rows < 2) {
        throw DomainError("lasso needs matching X and y with at least 2 rows");
    }
    for (const auto& c : x.columns) {
        if (c.size() != x.rows) throw DomainError("design column length mismatch");
    }
}

} // namespace

double lasso_lambda_max(const Design& x, std::span<const double> y) {
    check_shapes(x, y);
    const auto s = standardise(x, y);
    const double dn = static_cast<double>(x.rows);
    double best = 0.0;
    for (const auto& z : s.z) {
        best = std::max(best, std::fabs(std::inner_product(z.begin(), z.end(), s.yc.begin(), 0.0)) / dn);
    }
    return best;
}

LassoFit lasso_fit(const Design& x, std::span<const double> y, double lambda, double tol,
                   int max_iter) {
    check_shapes(x, y);
    if (!(lambda >= 0.0)) {
        throw DomainError("lambda must be >= 0");
    }
    if (!(tol > 0.0) || max_iter < 1) {
        throw DomainError("lasso needs tol > 0 and max_iter >= 1");
    }
    const auto s = standardise(x, y);
    const std::size_t n = x.rows;
    const std::size_t p = x.cols();
    const double dn = static_cast<double>(n);

    std::vector<double> beta(p, 0.0);
    std::vector<double> resid = s.yc;
    auto objective = [&] {
        double rss = 0.0;
        for (double r : resid) rss += r * r;
        double l1 = 0.0;
        for (double b : beta) l1 += std::fabs(b);
        return rss / (2.0 * dn) + lambda * l1;
    };
    auto to_original = [&](LassoFit& fit) {
        fit.coef.assign(p, 0.0);
        fit.intercept = s.ymean;
        for (std::size_t j = 0; j < p; ++j) {
            if (s.sd[j] > 0.0) {
                fit.coef[j] = beta[j] / s.sd[j];
                fit.intercept -= fit.coef[j] * s.mean[j];
            }
        }
    };

    LassoFit fit;
    fit.lambda = lambda;
    for (int sweep = 1; sweep <= max_iter; ++sweep) {
        double max_change = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            if (s.sd[j] == 0.0) continue;
            const auto& z = s.z[j];
            // z_j has squared norm n, so the univariate update is rho / n.
            double rho = 0.0;
            for (std::size_t i = 0; i < n; ++i) rho += z[i] * resid[i];
            rho = rho / dn + beta[j];
            const double updated = soft_threshold(rho, lambda);
            const double delta = updated - beta[j];
            if (delta != 0.0) {
                for (std::size_t i = 0; i < n; ++i) resid[i] -= delta * z[i];
                beta[j] = updated;
                max_change = std::max(max_change, std::fabs(delta));
            }
        }
        fit.objective.push_back(objective());
        fit.sweeps = sweep;
        if (max_change < tol) {
            to_original(fit);
            return fit;
        }
    }
    to_original(fit);
    throw LassoConvergenceError("lasso did not converge in " + std::to_string(max_iter) +
                                    " sweeps",
                                std::move(fit));
}

LassoCv lasso_cv(const Design& x, std::span<const double> y, int folds, int n_lambdas,
                 double min_ratio, std::uint64_t seed) {
    check_shapes(x, y);
    if (folds < 2 || static_cast<std::size_t>(folds) > x.rows) {
        throw DomainError("fold count must lie in [2, rows]");
    }
    if (n_lambdas < 1 || !(min_ratio > 0.0 && min_ratio < 1.0)) {
        throw DomainError("lambda path needs n_lambdas >= 1 and min_ratio in (0, 1)");
    }
    LassoCv cv;
    const double lmax = lasso_lambda_max(x, y);
    for (int i = 0; i < n_lambdas; ++i) {
        const double frac = n_lambdas == 1 ? 0.0 : static_cast<double>(i) / (n_lambdas - 1);
        cv.lambdas.push_back(lmax * std::pow(min_ratio, frac));
    }
    std::vector<std::size_t> order(x.rows);
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> fold_of(x.rows);
    for (std::size_t i = 0; i < order.size(); ++i) {
        fold_of[order[i]] = static_cast<int>(i % static_cast<std::size_t>(folds));
    }
    cv.cv_error.assign(cv.lambdas.size(), 0.0);
    for (int f = 0; f < folds; ++f) {
        Design train;
        std::vector<double> ytrain;
        std::vector<std::size_t> test;
        for (std::size_t r = 0; r < x.rows; ++r) {
            if (fold_of[r] == f) test.push_back(r);
            else ytrain.push_back(y[r]);
        }
        train.rows = ytrain.size();
        train.columns.resize(x.cols());
        for (std::size_t c = 0; c < x.cols(); ++c) {
            for (std::size_t r = 0; r < x.rows; ++r) {
                if (fold_of[r] != f) train.columns[c].push_back(x.columns[c][r]);
            }
        }
        for (std::size_t li = 0; li < cv.lambdas.size(); ++li) {
            LassoFit fit;
            try {
                fit = lasso_fit(train, ytrain, cv.lambdas[li], 1e-6, 2000);
            } catch (const LassoConvergenceError& e) {
                fit = e.last_iterate();
            }
            double err = 0.0;
            for (std::size_t r : test) {
                double pred = fit.intercept;
                for (std::size_t c = 0; c < x.cols(); ++c) pred += fit.coef[c] * x.columns[c][r];
                err += (y[r] - pred) * (y[r] - pred);
            }
            cv.cv_error[li] += err / static_cast<double>(x.rows);
        }
    }
    const auto best = std::min_element(cv.cv_error.begin(), cv.cv_error.end()) - cv.cv_error.begin();
    cv.best_lambda = cv.lambdas[static_cast<std::size_t>(best)];
    try {
        cv.fit = lasso_fit(x, y, cv.best_lambda, 1e-8, 10000);
    } catch (const LassoConvergenceError& e) {
        cv.fit = e.last_iterate();
    }
    return cv;
}

const char* to_string(Quadrant q) {
    switch (q) {
    case Quadrant::PlusPlus: return "++";
    case Quadrant::PlusMinus: return "+-";
    case Quadrant::MinusPlus: return "-+";
    case Quadrant::MinusMinus: return "--";
    }
    return "?";
}

std::vector<QuadrantRow> term_quadrants(const TermImportance& successive,
                                        const TermImportance& sparse) {
    std::vector<QuadrantRow> rows;
    for (const auto& [term, sp] : sparse.coefficients) {
        auto it = successive.coefficients.find(term);
        if (it == successive.coefficients.end() || sp == 0.0 || it->second == 0.0) continue;
        QuadrantRow row{term, sp, it->second, Quadrant::PlusPlus};
        if (sp > 0.0) row.quadrant = it->second > 0.0 ? Quadrant::PlusPlus : Quadrant::PlusMinus;
        else row.quadrant = it->second > 0.0 ? Quadrant::MinusPlus : Quadrant::MinusMinus;
        rows.push_back(row);
    }
    return rows;
}

} // namespace cadence
