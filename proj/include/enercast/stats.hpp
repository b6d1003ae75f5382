#pragma once

#include <cstddef>
#include <span>

namespace enercast {

// Pearson correlation coefficient, two-pass definitional form, clamped to
// [-1, 1]. Requires equal lengths, n >= 3, and non-constant inputs.
double pearson_r(std::span<const double> x, std::span<const double> y);

// Regularized incomplete beta I_x(a, b) by Lentz continued fraction.
// Absolute error below 1e-12 for the small a, b used here.
double regularized_incomplete_beta(double a, double b, double x);

// Student-t CDF with df degrees of freedom; CDF(0) = 0.5 exactly.
double student_t_cdf(double t, int df);

// Two-sided tail probability 2 * (1 - F(|t|)), evaluated directly as
// I_{df/(df+t^2)}(df/2, 1/2) to avoid cancellation for large |t|.
double student_t_two_sided_p(double t, int df);

struct TTestResult {
  double t_stat = 0.0;
  double p_value = 1.0;
  bool reject_h0 = false;
};

// t = r * sqrt(n-2) / sqrt(1-r^2) with df = n-2, two-sided p against
// H0: r = 0. |r| = 1 yields p = 0. reject_h0 is p_value <= alpha, always.
TTestResult correlation_t_test(double r, std::size_t n, double alpha);

}  // namespace enercast
