#include "cadence/stats.hpp"

#include "cadence/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

namespace cadence {

Series::Series(std::vector<double> values, Day origin)
    : values_(std::move(values)), origin_(origin) {
    if (values_.empty()) {
        throw DomainError("series must hold at least one value");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw DomainError("series values must be finite");
        }
    }
}

Series Series::slice(std::size_t offset, std::size_t count) const {
    if (offset + count > values_.size() || count == 0) {
        throw DomainError("series slice out of range");
    }
    return Series(std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(offset),
                                      values_.begin() +
                                          static_cast<std::ptrdiff_t>(offset + count)),
                  day_at(offset));
}

namespace stats {

std::vector<double> moving_average(std::span<const double> values, int window) {
    const auto n = static_cast<int>(values.size());
    if (window < 1 || window % 2 == 0) {
        throw DomainError("moving-average window must be odd and >= 1, got " +
                          std::to_string(window));
    }
    if (window > n) {
        throw DomainError("moving-average window " + std::to_string(window) +
                          " exceeds series length " + std::to_string(n));
    }
    const int half = window / 2;
    std::vector<double> out(values.size());
    for (int i = 0; i < n; ++i) {
        const int lo = std::max(0, i - half);
        const int hi = std::min(n - 1, i + half);
        double sum = 0.0;
        for (int j = lo; j <= hi; ++j) {
            sum += values[static_cast<std::size_t>(j)];
        }
        out[static_cast<std::size_t>(i)] = sum / (hi - lo + 1);
    }
    return out;
}

Series moving_average(const Series& s, int window) {
    return Series(moving_average(s.values(), window), s.origin());
}

double mean(std::span<const double> values) {
    if (values.empty()) {
        throw UndefinedError("mean of empty sample");
    }
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double median(std::vector<double> values) {
    if (values.empty()) {
        throw UndefinedError("median of empty sample");
    }
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double pearson_r(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw DomainError("pearson_r needs equal-length inputs");
    }
    if (x.size() < 3) {
        throw DomainError("pearson_r needs at least 3 pairs");
    }
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) {
        throw UndefinedError("correlation undefined for a zero-variance input");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double pearson_r(const Series& x, const Series& y) { return pearson_r(x.values(), y.values()); }

double incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) {
        throw DomainError("incomplete beta needs a, b > 0");
    }
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;

    // Modified Lentz evaluation of the continued fraction; converges fast for
    // x < (a + 1) / (a + b + 2), use the symmetry relation otherwise.
    auto continued_fraction = [](double aa, double bb, double xx) {
        constexpr double tiny = 1e-300;
        constexpr double tol = 1e-12;
        constexpr int max_iter = 300;
        const double qab = aa + bb;
        const double qap = aa + 1.0;
        const double qam = aa - 1.0;
        double c = 1.0;
        double d = 1.0 - qab * xx / qap;
        if (std::fabs(d) < tiny) d = tiny;
        d = 1.0 / d;
        double h = d;
        for (int m = 1; m <= max_iter; ++m) {
            const double m2 = 2.0 * m;
            double num = m * (bb - m) * xx / ((qam + m2) * (aa + m2));
            d = 1.0 + num * d;
            if (std::fabs(d) < tiny) d = tiny;
            c = 1.0 + num / c;
            if (std::fabs(c) < tiny) c = tiny;
            d = 1.0 / d;
            h *= d * c;
            num = -(aa + m) * (qab + m) * xx / ((aa + m2) * (qap + m2));
            d = 1.0 + num * d;
            if (std::fabs(d) < tiny) d = tiny;
            c = 1.0 + num / c;
            if (std::fabs(c) < tiny) c = tiny;
            d = 1.0 / d;
            const double delta = d * c;
            h *= delta;
            if (std::fabs(delta - 1.0) < tol) break;
        }
        return h;
    };

    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided(double t, double dof) {
    if (!(dof > 0.0)) {
        throw DomainError("t distribution needs dof > 0");
    }
    if (std::isinf(t)) return 0.0;
    const double x = dof / (dof + t * t);
    return std::clamp(incomplete_beta(0.5 * dof, 0.5, x), 0.0, 1.0);
}

double pearson_p_df(double r, double dof) {
    if (std::fabs(r) > 1.0 + 1e-12) {
        throw DomainError("|r| must be <= 1");
    }
    if (std::fabs(r) >= 1.0) {
        return 0.0;
    }
    const double t = r * std::sqrt(dof / (1.0 - r * r));
    return student_t_two_sided(t, dof);
}

double pearson_p(double r, int n) {
    if (n < 4) {
        throw DomainError("pearson_p needs n >= 4");
    }
    return pearson_p_df(r, static_cast<double>(n - 2));
}

namespace {

// Midranks, doubled so they stay integral: tied values at sorted positions
// i..j (0-based) all receive i + j + 2.
std::vector<std::int64_t> doubled_midranks(std::span<const double> pooled) {
    const std::size_t n = pooled.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return pooled[l] < pooled[r]; });
    std::vector<std::int64_t> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = static_cast<std::int64_t>(i + j + 2);
        }
        i = j + 1;
    }
    return ranks;
}

} // namespace

MannWhitneyResult mann_whitney_u(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        throw DomainError("Mann-Whitney needs two nonempty samples");
    }
    const std::size_t na = a.size();
    const std::size_t nb = b.size();
    const std::size_t n = na + nb;
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const auto ranks = doubled_midranks(pooled);

    std::int64_t rank_sum2 = 0;
    for (std::size_t i = 0; i < na; ++i) rank_sum2 += ranks[i];
    // 2U = 2R - na(na+1)
    const std::int64_t u2 = rank_sum2 - static_cast<std::int64_t>(na * (na + 1));
    MannWhitneyResult result;
    result.u = static_cast<double>(u2) / 2.0;

    const double mean_u = static_cast<double>(na * nb) / 2.0;

    if (na <= 8 && nb <= 8) {
        // ways[k][s]: subsets of size k with doubled rank sum s.
        const std::int64_t max_sum = std::accumulate(ranks.begin(), ranks.end(), std::int64_t{0});
        std::vector<std::vector<double>> ways(
            na + 1, std::vector<double>(static_cast<std::size_t>(max_sum) + 1, 0.0));
        ways[0][0] = 1.0;
        for (std::size_t item = 0; item < n; ++item) {
            const auto r = static_cast<std::size_t>(ranks[item]);
            for (std::size_t k = std::min(na, item + 1); k >= 1; --k) {
                for (std::size_t s = static_cast<std::size_t>(max_sum); s >= r; --s) {
                    ways[k][s] += ways[k - 1][s - r];
                }
            }
        }
        const double observed = std::fabs(static_cast<double>(u2) - 2.0 * mean_u);
        double extreme = 0.0;
        double total = 0.0;
        for (std::size_t s = 0; s <= static_cast<std::size_t>(max_sum); ++s) {
            const double w = ways[na][s];
            if (w == 0.0) continue;
            total += w;
            const double u2s = static_cast<double>(s) - static_cast<double>(na * (na + 1));
            if (std::fabs(u2s - 2.0 * mean_u) >= observed - 1e-9) {
                extreme += w;
            }
        }
        result.p = std::min(1.0, extreme / total);
        result.exact = true;
        return result;
    }

    // Tie correction: sum of t^3 - t over tie groups.
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        tie_term += t * t * t - t;
        i = j + 1;
    }
    const double dn = static_cast<double>(n);
    const double var = static_cast<double>(na * nb) / 12.0 *
                       ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
    if (var <= 0.0) {
        result.p = 1.0;
        return result;
    }
    const double z = std::max(0.0, std::fabs(result.u - mean_u) - 0.5) / std::sqrt(var);
    result.p = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    return result;
}

FitLine linear_fit(std::span<const Point> points) {
    if (points.size() < 2) {
        throw DomainError("linear fit needs at least 2 points");
    }
    const double n = static_cast<double>(points.size());
    double mx = 0.0, my = 0.0;
    for (const auto& p : points) {
        mx += p.x;
        my += p.y;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& p : points) {
        sxx += (p.x - mx) * (p.x - mx);
        sxy += (p.x - mx) * (p.y - my);
        syy += (p.y - my) * (p.y - my);
    }
    if (sxx <= 0.0) {
        throw DomainError("linear fit needs at least two distinct x values");
    }
    FitLine fit;
    fit.n = static_cast<int>(points.size());
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (const auto& p : points) {
        const double e = p.y - (fit.intercept + fit.slope * p.x);
        ss_res += e * e;
    }
    const double scale = std::max(1.0, syy) * 1e-24;
    if (syy <= scale) {
        fit.r_squared = ss_res <= scale ? 1.0 : 0.0;
    } else {
        fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    }
    return fit;
}

} // namespace stats
} // namespace cadence
