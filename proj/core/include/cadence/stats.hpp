#pragma once

#include "cadence/series.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace cadence::stats {

// Centered moving average. Edges average over the in-range part of the window,
// so the output has the input's length. `window` must be odd and <= size.
[[nodiscard]] Series moving_average(const Series& s, int window);
[[nodiscard]] std::vector<double> moving_average(std::span<const double> values, int window);

// Product-moment correlation. Requires equal lengths >= 3 and nonzero
// variance in both inputs (UndefinedError otherwise).
[[nodiscard]] double pearson_r(std::span<const double> x, std::span<const double> y);
[[nodiscard]] double pearson_r(const Series& x, const Series& y);

// Two-sided p of the correlation t-test, t = r sqrt((n-2)/(1-r^2)) on n-2
// degrees of freedom. |r| == 1 gives 0.
[[nodiscard]] double pearson_p(double r, int n);

// Same test with a real-valued degrees-of-freedom count (> 0).
[[nodiscard]] double pearson_p_df(double r, double dof);

// Two-sided Student-t tail probability P(|T| >= |t|).
[[nodiscard]] double student_t_two_sided(double t, double dof);

// Regularized incomplete beta I_x(a, b), continued fraction to 1e-12
// (300-iteration cap).
[[nodiscard]] double incomplete_beta(double a, double b, double x);

struct MannWhitneyResult {
    double u = 0.0;   // U of the first sample (midranks for ties)
    double p = 1.0;   // two-sided
    bool exact = false;
};

// Exact null distribution when both samples have at most 8 values, otherwise
// the normal approximation with tie and continuity corrections.
[[nodiscard]] MannWhitneyResult mann_whitney_u(std::span<const double> a,
                                               std::span<const double> b);

struct Point {
    double x = 0.0;
    double y = 0.0;
};

struct FitLine {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    int n = 0;
};

// Ordinary least squares. R^2 = 1 - SS_res / SS_tot; when SS_tot is zero it
// is 1 for a perfect fit and 0 otherwise.
[[nodiscard]] FitLine linear_fit(std::span<const Point> points);

[[nodiscard]] double mean(std::span<const double> values);
[[nodiscard]] double median(std::vector<double> values);

} // namespace cadence::stats
