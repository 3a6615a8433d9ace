#pragma once

#include "cadence/data_model.hpp"
#include "cadence/series.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cadence {

// Daily 0/1 series over the history's span, 1 on days a new version appears.
[[nodiscard]] Series release_impulse(const AppHistory& history);

struct LagOptions {
    int max_lag = 10;
    int smooth_window = 3;
    double alpha = 0.01;
    // Degrees of freedom from the autocorrelation-adjusted effective sample
    // size instead of the raw overlap length.
    bool effective_n = true;
    // best_lag requires the Bonferroni-adjusted p over the max_lag + 1 tests
    // to pass alpha.
    bool bonferroni = true;
};

struct LagEntry {
    int lag = 0;
    double r = 0.0;
    double p = 1.0;
    bool defined = true;  // false when a smoothed overlap has zero variance
};

struct LagResult {
    std::string app_id;
    std::vector<LagEntry> per_lag;  // lags 0..max_lag
    std::optional<int> best_lag;    // argmax |r| among significant lags
};

// Correlates smoothed updates[0, n - l) with smoothed ratings[l, n) for each
// lag l in [0, max_lag].
[[nodiscard]] LagResult lag_correlations(const Series& updates, const Series& ratings,
                                         const LagOptions& options = {});

// Pearson p with degrees of freedom from the effective sample size
// n_eff = 1 / (1/n + 2/n sum_{j<=n/5} (n-j)/n rho_x(j) rho_y(j)).
[[nodiscard]] double effective_n_pearson_p(std::span<const double> x, std::span<const double> y,
                                           double r);

struct LagHistogram {
    std::vector<double> fraction;  // fraction[l]: share of apps with p <= alpha at lag l
    std::vector<double> mean_abs_r;
    int n_apps = 0;

    // Lag with the largest fraction; ties broken by larger mean |r|, then by
    // the smaller lag.
    [[nodiscard]] int peak_lag() const;
};

[[nodiscard]] LagHistogram aggregate_lags(std::span<const LagResult> results, double alpha);

} // namespace cadence
