#pragma once

#include "cadence/error.hpp"
#include "cadence/text.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace cadence {

// Column-major dense design matrix.
struct Design {
    std::size_t rows = 0;
    std::vector<std::vector<double>> columns;

    [[nodiscard]] std::size_t cols() const noexcept { return columns.size(); }
};

// Columns are the given vocabulary indices, in order.
[[nodiscard]] Design design_from_terms(std::span<const TermVector> vectors,
                                       std::span<const int> term_indices);

struct LassoFit {
    std::vector<double> coef;  // original feature scale
    double intercept = 0.0;
    double lambda = 0.0;
    int sweeps = 0;
    // Objective after each sweep, in the standardised problem.
    std::vector<double> objective;
};

class LassoConvergenceError : public Error {
public:
    LassoConvergenceError(const std::string& what, LassoFit last)
        : Error("convergence", what), last_(std::move(last)) {}

    [[nodiscard]] const LassoFit& last_iterate() const noexcept { return last_; }

private:
    LassoFit last_;
};

// Coordinate descent for (1/2n) sum (y - b0 - X b)^2 + lambda |b|_1 on
// columns centred and scaled to unit population variance; the intercept is
// not penalised. Constant columns get coefficient 0. Converged once the
// largest standardised coefficient change in a sweep is below `tol`.
[[nodiscard]] LassoFit lasso_fit(const Design& x, std::span<const double> y, double lambda,
                                 double tol = 1e-8, int max_iter = 10000);

// Smallest lambda giving the all-zero solution: max_j |z_j . (y - ybar)| / n.
[[nodiscard]] double lasso_lambda_max(const Design& x, std::span<const double> y);

struct LassoCv {
    std::vector<double> lambdas;   // decreasing
    std::vector<double> cv_error;  // mean held-out squared error per lambda
    double best_lambda = 0.0;
    LassoFit fit;                  // refit on all rows at best_lambda
};

// k-fold cross-validation over n_lambdas log-spaced values from lambda_max
// down to lambda_max * min_ratio.
[[nodiscard]] LassoCv lasso_cv(const Design& x, std::span<const double> y, int folds = 5,
                               int n_lambdas = 50, double min_ratio = 1e-3,
                               std::uint64_t seed = 0);

struct TermImportance {
    std::string group;
    double lambda = 0.0;
    std::map<std::string, double> coefficients;  // nonzero only
};

enum class Quadrant { PlusPlus, PlusMinus, MinusPlus, MinusMinus };

// Sign pair (sparse, successive) as "++", "+-", "-+", "--".
[[nodiscard]] const char* to_string(Quadrant q);

struct QuadrantRow {
    std::string term;
    double sparse = 0.0;
    double successive = 0.0;
    Quadrant quadrant = Quadrant::PlusPlus;
};

// Terms with nonzero coefficients in both tables, sorted by term.
[[nodiscard]] std::vector<QuadrantRow> term_quadrants(const TermImportance& successive,
                                                      const TermImportance& sparse);

} // namespace cadence
