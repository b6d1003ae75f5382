#include "enercast/linear.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "enercast/error.hpp"

namespace enercast {

namespace {

struct Centered {
  Matrix X;
  std::vector<double> y;
  std::vector<double> x_mean;
  double y_mean = 0.0;
};

Centered center(const Matrix& X, std::span<const double> y) {
  if (X.rows() != y.size()) {
    fail(ErrorKind::LengthMismatch, "X has " + std::to_string(X.rows()) + " rows but y has " +
                                        std::to_string(y.size()));
  }
  if (X.rows() == 0) fail(ErrorKind::InsufficientRows, "cannot fit on zero rows");

  Centered c;
  c.X = X;
  c.y.assign(y.begin(), y.end());
  const double n = static_cast<double>(X.rows());
  c.x_mean.assign(X.cols(), 0.0);
  for (std::size_t j = 0; j < X.cols(); ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < X.rows(); ++i) sum += X(i, j);
    c.x_mean[j] = sum / n;
    for (std::size_t i = 0; i < X.rows(); ++i) c.X(i, j) -= c.x_mean[j];
  }
  double y_sum = 0.0;
  for (double v : c.y) y_sum += v;
  c.y_mean = y_sum / n;
  for (double& v : c.y) v -= c.y_mean;
  return c;
}

double intercept_from(const Centered& c, const std::vector<double>& w) {
  double b = c.y_mean;
  for (std::size_t j = 0; j < w.size(); ++j) b -= c.x_mean[j] * w[j];
  return b;
}

// Solves the SPD system G z = rhs in place via Cholesky.
std::vector<double> cholesky_solve(Matrix G, std::vector<double> rhs) {
  const std::size_t n = G.rows();
  for (std::size_t k = 0; k < n; ++k) {
    double diag = G(k, k);
    for (std::size_t p = 0; p < k; ++p) diag -= G(k, p) * G(k, p);
    if (diag <= 0.0) fail(ErrorKind::ZeroVariance, "Cholesky: matrix not positive definite");
    G(k, k) = std::sqrt(diag);
    for (std::size_t i = k + 1; i < n; ++i) {
      double v = G(i, k);
      for (std::size_t p = 0; p < k; ++p) v -= G(i, p) * G(k, p);
      G(i, k) = v / G(k, k);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double v = rhs[i];
    for (std::size_t p = 0; p < i; ++p) v -= G(i, p) * rhs[p];
    rhs[i] = v / G(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    double v = rhs[i];
    for (std::size_t p = i + 1; p < n; ++p) v -= G(p, i) * rhs[p];
    rhs[i] = v / G(i, i);
  }
  return rhs;
}

double soft_threshold(double value, double threshold) {
  if (value > threshold) return value - threshold;
  if (value < -threshold) return value + threshold;
  return 0.0;
}

}  // namespace

LinearFit solve_ols(const Matrix& X, std::span<const double> y) {
  if (X.rows() < X.cols() + 1) {
    fail(ErrorKind::InsufficientRows, "OLS needs rows >= columns + 1, got " +
                                          std::to_string(X.rows()) + " x " +
                                          std::to_string(X.cols()));
  }
  Centered c = center(X, y);
  const std::size_t m = c.X.rows();
  const std::size_t n = c.X.cols();

  // Column-pivoted Householder QR of the centered matrix; Q^T is applied to
  // y as the factorization proceeds.
  Matrix& A = c.X;
  std::vector<double>& qty = c.y;
  std::vector<std::size_t> pivot(n);
  std::iota(pivot.begin(), pivot.end(), std::size_t{0});
  std::vector<double> col_norm2(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += A(i, j) * A(i, j);
    col_norm2[j] = s;
  }
  const double norm_floor = *std::max_element(col_norm2.begin(), col_norm2.end());

  const std::size_t steps = std::min(m, n);
  std::vector<double> householder(m);
  double r00 = 0.0;
  std::size_t rank = steps;

  for (std::size_t k = 0; k < steps; ++k) {
    // Pivot on the largest remaining column norm, recomputed exactly.
    std::size_t best = k;
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < m; ++i) s += A(i, j) * A(i, j);
      col_norm2[j] = s;
      if (s > col_norm2[best]) best = j;
    }
    if (best != k) {
      for (std::size_t i = 0; i < m; ++i) std::swap(A(i, k), A(i, best));
      std::swap(col_norm2[k], col_norm2[best]);
      std::swap(pivot[k], pivot[best]);
    }

    const double norm = std::sqrt(col_norm2[k]);
    if (k == 0) r00 = norm;
    if (norm <= std::max(r00, std::sqrt(norm_floor)) * 1e-12 * static_cast<double>(std::max(m, n))) {
      rank = k;
      break;
    }

    // Householder vector for column k.
    const double alpha = A(k, k) >= 0.0 ? -norm : norm;
    double v_norm2 = 0.0;
    householder[k] = A(k, k) - alpha;
    v_norm2 += householder[k] * householder[k];
    for (std::size_t i = k + 1; i < m; ++i) {
      householder[i] = A(i, k);
      v_norm2 += householder[i] * householder[i];
    }
    A(k, k) = alpha;
    for (std::size_t i = k + 1; i < m; ++i) A(i, k) = 0.0;
    if (v_norm2 > 0.0) {
      const double beta = 2.0 / v_norm2;
      for (std::size_t j = k + 1; j < n; ++j) {
        double dot = 0.0;
        for (std::size_t i = k; i < m; ++i) dot += householder[i] * A(i, j);
        const double scale = beta * dot;
        for (std::size_t i = k; i < m; ++i) A(i, j) -= scale * householder[i];
      }
      double dot = 0.0;
      for (std::size_t i = k; i < m; ++i) dot += householder[i] * qty[i];
      const double scale = beta * dot;
      for (std::size_t i = k; i < m; ++i) qty[i] -= scale * householder[i];
    }
  }

  LinearFit fit;
  fit.rank = rank;
  std::vector<double> w_pivoted(n, 0.0);

  if (rank == n) {
    for (std::size_t i = n; i-- > 0;) {
      double v = qty[i];
      for (std::size_t j = i + 1; j < n; ++j) v -= A(i, j) * w_pivoted[j];
      w_pivoted[i] = v / A(i, i);
    }
  } else {
    // Minimum-norm solution of R1 z = c with R1 the leading rank x n block:
    // z = R1^T (R1 R1^T)^{-1} c, solved via Cholesky on the small Gram matrix.
    for (std::size_t j = rank; j < n; ++j) fit.dropped_columns.push_back(pivot[j]);
    std::sort(fit.dropped_columns.begin(), fit.dropped_columns.end());
    Matrix gram(rank, rank);
    for (std::size_t i = 0; i < rank; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        double s = 0.0;
        for (std::size_t p = std::max(i, j); p < n; ++p) s += A(i, p) * A(j, p);
        gram(i, j) = s;
        gram(j, i) = s;
      }
    }
    std::vector<double> rhs(qty.begin(), qty.begin() + static_cast<std::ptrdiff_t>(rank));
    const std::vector<double> z = cholesky_solve(std::move(gram), std::move(rhs));
    for (std::size_t j = 0; j < n; ++j) {
      double v = 0.0;
      for (std::size_t i = 0; i < std::min(rank, j + 1); ++i) v += A(i, j) * z[i];
      w_pivoted[j] = v;
    }
  }

  fit.coefficients.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) fit.coefficients[pivot[j]] = w_pivoted[j];
  fit.intercept = intercept_from(c, fit.coefficients);
  return fit;
}

LinearFit solve_ridge(const Matrix& X, std::span<const double> y, double lambda) {
  if (lambda < 0.0) fail(ErrorKind::Usage, "ridge lambda must be >= 0");
  if (lambda == 0.0) return solve_ols(X, y);

  Centered c = center(X, y);
  const std::size_t n = c.X.cols();
  Matrix gram(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < c.X.rows(); ++i) s += c.X(i, a) * c.X(i, b);
      gram(a, b) = s;
      gram(b, a) = s;
    }
    gram(a, a) += lambda;
  }
  std::vector<double> rhs(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < c.X.rows(); ++i) s += c.X(i, j) * c.y[i];
    rhs[j] = s;
  }

  LinearFit fit;
  fit.rank = n;
  fit.coefficients = cholesky_solve(std::move(gram), std::move(rhs));
  fit.intercept = intercept_from(c, fit.coefficients);
  return fit;
}

LinearFit solve_lasso(const Matrix& X, std::span<const double> y, const LassoOptions& options) {
  if (options.lambda < 0.0) fail(ErrorKind::Usage, "lasso lambda must be >= 0");
  Centered c = center(X, y);
  const std::size_t m = c.X.rows();
  const std::size_t n = c.X.cols();
  const double inv_m = 1.0 / static_cast<double>(m);

  std::vector<double> col_sq(n, 0.0);  // (1/n) sum x_ij^2
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += c.X(i, j) * c.X(i, j);
    col_sq[j] = s * inv_m;
  }

  std::vector<double> w(n, 0.0);
  std::vector<double> residual = c.y;  // y - Xw with w = 0

  LinearFit fit;
  fit.rank = n;
  fit.converged = false;

  for (std::size_t sweep = 0; sweep < options.max_iter; ++sweep) {
    double max_delta = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (col_sq[j] == 0.0) continue;  // constant column stays at zero
      double rho = 0.0;
      for (std::size_t i = 0; i < m; ++i) rho += c.X(i, j) * residual[i];
      rho = rho * inv_m + col_sq[j] * w[j];
      const double updated = soft_threshold(rho, options.lambda) / col_sq[j];
      const double delta = updated - w[j];
      if (delta != 0.0) {
        for (std::size_t i = 0; i < m; ++i) residual[i] -= delta * c.X(i, j);
        w[j] = updated;
      }
      max_delta = std::max(max_delta, std::fabs(delta));
    }

    double sse = 0.0;
    for (double r : residual) sse += r * r;
    double l1 = 0.0;
    for (double v : w) l1 += std::fabs(v);
    fit.objective_trace.push_back(0.5 * inv_m * sse + options.lambda * l1);
    fit.sweeps = sweep + 1;

    if (max_delta < options.tol) {
      fit.converged = true;
      break;
    }
  }

  fit.coefficients = std::move(w);
  fit.intercept = intercept_from(c, fit.coefficients);
  return fit;
}

std::vector<double> linear_predict(const LinearFit& fit, const Matrix& X) {
  if (X.cols() != fit.coefficients.size()) {
    fail(ErrorKind::ShapeMismatch, "predict expects " + std::to_string(fit.coefficients.size()) +
                                       " columns, got " + std::to_string(X.cols()));
  }
  std::vector<double> out(X.rows(), 0.0);
  for (std::size_t i = 0; i < X.rows(); ++i) {
    double acc = fit.intercept;
    const auto row = X.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) acc = std::fma(row[j], fit.coefficients[j], acc);
    out[i] = acc;
  }
  return out;
}

}  // namespace enercast
