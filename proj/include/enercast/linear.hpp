#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "enercast/matrix.hpp"

namespace enercast {

struct LinearFit {
  std::vector<double> coefficients;
  double intercept = 0.0;
  std::size_t rank = 0;                      // OLS only
  std::vector<std::size_t> dropped_columns;  // OLS rank-deficient pivots
  bool converged = true;                     // lasso
  std::size_t sweeps = 0;                    // lasso
  std::vector<double> objective_trace;       // lasso, one entry per sweep
};

// Least squares via column-pivoted Householder QR on centered data. Rank
// deficiency is reported through `dropped_columns` and resolved with the
// minimum-norm solution rather than an error.
LinearFit solve_ols(const Matrix& X, std::span<const double> y);

// min ||y - Xw - b||^2 + lambda ||w||^2 with an unpenalized intercept
// (fit on centered data). lambda = 0 falls back to solve_ols.
LinearFit solve_ridge(const Matrix& X, std::span<const double> y, double lambda);

struct LassoOptions {
  double lambda = 0.01;
  std::size_t max_iter = 10000;
  double tol = 1e-6;
};

// Cyclic coordinate descent with soft-thresholding on
// (1/2n)||y - Xw - b||^2 + lambda ||w||_1, intercept unpenalized via
// centering. Sets `converged = false` when max_iter sweeps were exhausted;
// the result is still returned.
LinearFit solve_lasso(const Matrix& X, std::span<const double> y, const LassoOptions& options);

std::vector<double> linear_predict(const LinearFit& fit, const Matrix& X);

}  // namespace enercast
