#include "cadence/lag_scan.hpp"

#include "cadence/error.hpp"
#include "cadence/stats.hpp"

#include <algorithm>
#include <cmath>

namespace cadence {

Series release_impulse(const AppHistory& history) {
    if (history.empty()) {
        throw DomainError("release impulse of an empty history");
    }
    std::vector<double> values(static_cast<std::size_t>(history.span_days()), 0.0);
    for (const auto& ev : derive_releases(history)) {
        values[static_cast<std::size_t>(days_between(history.first_day(), ev.day))] = 1.0;
    }
    return Series(std::move(values), history.first_day());
}

namespace {

std::vector<double> autocorrelations(std::span<const double> x, std::size_t max_j) {
    const double m = stats::mean(x);
    double denom = 0.0;
    for (double v : x) denom += (v - m) * (v - m);
    std::vector<double> rho(max_j + 1, 0.0);
    if (denom <= 0.0) return rho;
    for (std::size_t j = 1; j <= max_j && j < x.size(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i + j < x.size(); ++i) s += (x[i] - m) * (x[i + j] - m);
        rho[j] = s / denom;
    }
    return rho;
}

bool has_variance(std::span<const double> x) {
    return std::any_of(x.begin(), x.end(), [&](double v) { return v != x.front(); });
}

} // namespace

double effective_n_pearson_p(std::span<const double> x, std::span<const double> y, double r) {
    const std::size_t n = x.size();
    if (n < 4 || y.size() != n) {
        throw DomainError("effective-n test needs equal lengths >= 4");
    }
    const std::size_t max_j = std::max<std::size_t>(1, n / 5);
    const auto rx = autocorrelations(x, max_j);
    const auto ry = autocorrelations(y, max_j);
    const double dn = static_cast<double>(n);
    double s = 0.0;
    for (std::size_t j = 1; j <= max_j; ++j) {
        s += (dn - static_cast<double>(j)) / dn * rx[j] * ry[j];
    }
    const double inv = 1.0 / dn + 2.0 / dn * s;
    const double n_eff = inv > 0.0 ? std::clamp(1.0 / inv, 3.0, dn) : dn;
    return stats::pearson_p_df(r, n_eff - 2.0);
}

LagResult lag_correlations(const Series& updates, const Series& ratings,
                           const LagOptions& options) {
    if (updates.size() != ratings.size()) {
        throw DomainError("update and rating series differ in length");
    }
    if (options.max_lag < 0) {
        throw DomainError("max_lag must be >= 0");
    }
    const std::size_t n = updates.size();
    if (n <= static_cast<std::size_t>(options.max_lag) + 3) {
        throw DomainError("series of length " + std::to_string(n) + " too short for max_lag " +
                          std::to_string(options.max_lag));
    }
    if (!(options.alpha > 0.0 && options.alpha <= 1.0)) {
        throw DomainError("alpha must lie in (0, 1]");
    }
    const auto u = stats::moving_average(updates.values(), options.smooth_window);
    const auto v = stats::moving_average(ratings.values(), options.smooth_window);

    LagResult result;
    const double n_tests = static_cast<double>(options.max_lag + 1);
    double best_abs = -1.0;
    for (int lag = 0; lag <= options.max_lag; ++lag) {
        const std::size_t l = static_cast<std::size_t>(lag);
        std::span<const double> x(u.data(), n - l);
        std::span<const double> y(v.data() + l, n - l);
        LagEntry e;
        e.lag = lag;
        if (!has_variance(x) || !has_variance(y)) {
            e.defined = false;
            result.per_lag.push_back(e);
            continue;
        }
        e.r = stats::pearson_r(x, y);
        e.p = options.effective_n ? effective_n_pearson_p(x, y, e.r)
                                  : stats::pearson_p(e.r, static_cast<int>(x.size()));
        result.per_lag.push_back(e);
        const double gate = options.bonferroni ? std::min(1.0, e.p * n_tests) : e.p;
        if (gate <= options.alpha && std::fabs(e.r) > best_abs) {
            best_abs = std::fabs(e.r);
            result.best_lag = lag;
        }
    }
    return result;
}

int LagHistogram::peak_lag() const {
    if (fraction.empty()) {
        throw UndefinedError("empty lag histogram");
    }
    std::size_t best = 0;
    for (std::size_t l = 1; l < fraction.size(); ++l) {
        if (fraction[l] > fraction[best] ||
            (fraction[l] == fraction[best] && mean_abs_r[l] > mean_abs_r[best])) {
            best = l;
        }
    }
    return static_cast<int>(best);
}

LagHistogram aggregate_lags(std::span<const LagResult> results, double alpha) {
    if (results.empty()) {
        throw UndefinedError("no lag results to aggregate");
    }
    const std::size_t lags = results.front().per_lag.size();
    LagHistogram h;
    h.fraction.assign(lags, 0.0);
    h.mean_abs_r.assign(lags, 0.0);
    std::vector<int> defined(lags, 0);
    for (const auto& res : results) {
        if (res.per_lag.size() != lags) {
            throw DomainError("lag results disagree on max_lag");
        }
        for (std::size_t l = 0; l < lags; ++l) {
            const auto& e = res.per_lag[l];
            if (!e.defined) continue;
            ++defined[l];
            h.mean_abs_r[l] += std::fabs(e.r);
            if (e.p <= alpha) h.fraction[l] += 1.0;
        }
    }
    h.n_apps = static_cast<int>(results.size());
    for (std::size_t l = 0; l < lags; ++l) {
        h.fraction[l] /= static_cast<double>(results.size());
        if (defined[l]) h.mean_abs_r[l] /= defined[l];
    }
    return h;
}

} // namespace cadence
