#include "cadence/tsne.hpp"

#include "cadence/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace cadence {

double default_perplexity(std::size_t n) {
    return std::min(30.0, (static_cast<double>(n) - 1.0) / 3.0);
}

namespace {

std::vector<double> squared_distances(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < rows[i].size(); ++k) {
                const double diff = rows[i][k] - rows[j][k];
                s += diff * diff;
            }
            d[i * n + j] = s;
            d[j * n + i] = s;
        }
    }
    return d;
}

// Conditional row i of P for precision beta; returns the Shannon entropy (nats).
double conditional_row(const double* dist, std::size_t n, std::size_t i, double beta,
                       double* row) {
    double min_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        if (j != i) min_d = std::min(min_d, dist[j]);
    }
    double sum = 0.0;
    double weighted = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) {
            row[j] = 0.0;
            continue;
        }
        // Shift by the nearest distance for numerical range; cancels on normalising.
        row[j] = std::exp(-beta * (dist[j] - min_d));
        sum += row[j];
        weighted += row[j] * (dist[j] - min_d);
    }
    for (std::size_t j = 0; j < n; ++j) row[j] /= sum;
    return std::log(sum) + beta * weighted / sum;
}

} // namespace

std::vector<double> tsne_affinities(const std::vector<std::vector<double>>& rows,
                                    double perplexity) {
    const std::size_t n = rows.size();
    const auto dist = squared_distances(rows);
    const double target = std::log(perplexity);
    std::vector<double> cond(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double beta = 1.0;
        double lo = 0.0;
        double hi = std::numeric_limits<double>::infinity();
        for (int iter = 0; iter < 200; ++iter) {
            const double h = conditional_row(&dist[i * n], n, i, beta, &cond[i * n]);
            const double diff = h - target;
            if (std::fabs(diff) < 1e-10) break;
            if (diff > 0.0) {
                lo = beta;
                beta = std::isinf(hi) ? beta * 2.0 : 0.5 * (beta + hi);
            } else {
                hi = beta;
                beta = 0.5 * (beta + lo);
            }
        }
    }
    std::vector<double> p(n * n, 0.0);
    const double denom = 2.0 * static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            p[i * n + j] = std::max((cond[i * n + j] + cond[j * n + i]) / denom, 1e-12);
        }
    }
    return p;
}

double tsne_kl(std::span<const double> p, std::span<const Point2> y) {
    const std::size_t n = y.size();
    std::vector<double> num(n * n, 0.0);
    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = y[i][0] - y[j][0];
            const double dy = y[i][1] - y[j][1];
            const double q = 1.0 / (1.0 + dx * dx + dy * dy);
            num[i * n + j] = q;
            num[j * n + i] = q;
            z += 2.0 * q;
        }
    }
    double kl = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double pij = p[i * n + j];
            const double qij = std::max(num[i * n + j] / z, 1e-12);
            kl += pij * std::log(pij / qij);
        }
    }
    return std::max(0.0, kl);
}

Embedding tsne_embed(const std::vector<std::vector<double>>& rows, const TsneOptions& opt) {
    const std::size_t n = rows.size();
    if (n < 5) {
        throw DomainError("t-SNE needs at least 5 points, got " + std::to_string(n));
    }
    for (const auto& r : rows) {
        if (r.size() != rows.front().size()) {
            throw DomainError("t-SNE rows differ in dimension");
        }
    }
    const double perplexity = opt.perplexity.value_or(default_perplexity(n));
    const double limit = (static_cast<double>(n) - 1.0) / 3.0;
    if (!(perplexity > 0.0) || perplexity > limit + 1e-12) {
        throw DomainError("perplexity " + std::to_string(perplexity) + " infeasible for " +
                          std::to_string(n) + " points (max " + std::to_string(limit) + ")");
    }
    if (opt.iterations < 1 || opt.exaggeration_iterations < 0) {
        throw DomainError("t-SNE iteration counts must be positive");
    }

    const auto p = tsne_affinities(rows, perplexity);

    std::vector<Point2> y(n);
    if (!opt.initial.empty()) {
        if (opt.initial.size() != n) {
            throw DomainError("initial coordinates do not match the row count");
        }
        y = opt.initial;
    } else {
        std::mt19937_64 rng(opt.seed);
        std::normal_distribution<double> normal(0.0, 1e-4);
        for (auto& pt : y) {
            pt[0] = normal(rng);
            pt[1] = normal(rng);
        }
    }

    std::vector<Point2> update(n, Point2{0.0, 0.0});
    std::vector<Point2> gains(n, Point2{1.0, 1.0});
    std::vector<Point2> grad(n);
    std::vector<double> num(n * n, 0.0);

    Embedding out;
    out.seed = opt.seed;
    for (int iter = 0; iter < opt.iterations; ++iter) {
        const double exag = iter < opt.exaggeration_iterations ? opt.exaggeration : 1.0;
        const double momentum =
            iter < opt.exaggeration_iterations ? opt.initial_momentum : opt.final_momentum;

        double z = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double dx = y[i][0] - y[j][0];
                const double dy = y[i][1] - y[j][1];
                const double q = 1.0 / (1.0 + dx * dx + dy * dy);
                num[i * n + j] = q;
                num[j * n + i] = q;
                z += 2.0 * q;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            double gx = 0.0, gy = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                const double q = num[i * n + j];
                const double mult = (exag * p[i * n + j] - q / z) * q;
                gx += mult * (y[i][0] - y[j][0]);
                gy += mult * (y[i][1] - y[j][1]);
            }
            grad[i] = {4.0 * gx, 4.0 * gy};
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (int d = 0; d < 2; ++d) {
                double& g = gains[i][d];
                g = ((grad[i][d] > 0.0) != (update[i][d] > 0.0)) ? g + 0.2 : g * 0.8;
                g = std::max(g, 0.01);
                update[i][d] = momentum * update[i][d] - opt.learning_rate * g * grad[i][d];
                y[i][d] += update[i][d];
            }
        }
        double cx = 0.0, cy = 0.0;
        for (const auto& pt : y) {
            cx += pt[0];
            cy += pt[1];
        }
        cx /= static_cast<double>(n);
        cy /= static_cast<double>(n);
        for (auto& pt : y) {
            pt[0] -= cx;
            pt[1] -= cy;
        }
        if (iter + 1 == opt.exaggeration_iterations) {
            out.kl_after_exaggeration = tsne_kl(p, y);
        }
    }
    out.final_kl = tsne_kl(p, y);
    if (opt.exaggeration_iterations == 0 || opt.exaggeration_iterations > opt.iterations) {
        out.kl_after_exaggeration = out.final_kl;
    }
    out.points = std::move(y);
    return out;
}

} // namespace cadence
