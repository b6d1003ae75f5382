#include "enercast/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "enercast/error.hpp"

namespace enercast {

namespace {

// Continued fraction for the incomplete beta function (Lentz's method).
double beta_continued_fraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-15;
  constexpr int kMaxIterations = 500;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  return h;  // df here is tiny; convergence in a handful of terms
}

bool is_constant(std::span<const double> values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] != values[0]) return false;
  }
  return true;
}

}  // namespace

double pearson_r(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    fail(ErrorKind::LengthMismatch, "pearson_r: sequence lengths " + std::to_string(x.size()) +
                                        " vs " + std::to_string(y.size()));
  }
  if (x.size() < 3) {
    fail(ErrorKind::InsufficientRows, "pearson_r: needs at least 3 points");
  }
  if (is_constant(x) || is_constant(y)) {
    fail(ErrorKind::ZeroVariance, "pearson_r: constant sequence has no correlation");
  }

  const double n = static_cast<double>(x.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= n;
  mean_y /= n;

  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) {
    fail(ErrorKind::ZeroVariance, "pearson_r: zero variance after centering");
  }
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, int df) {
  if (t == 0.0) return 0.5;
  const double nu = static_cast<double>(df);
  const double x = nu / (nu + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(nu / 2.0, 0.5, x);
  return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_two_sided_p(double t, int df) {
  if (std::isinf(t)) return 0.0;
  const double nu = static_cast<double>(df);
  const double x = nu / (nu + t * t);
  return regularized_incomplete_beta(nu / 2.0, 0.5, x);
}

TTestResult correlation_t_test(double r, std::size_t n, double alpha) {
  if (n < 3) fail(ErrorKind::InsufficientRows, "correlation_t_test: needs n >= 3");
  r = std::clamp(r, -1.0, 1.0);
  const int df = static_cast<int>(n) - 2;

  TTestResult result;
  const double denom = 1.0 - r * r;
  if (denom <= 0.0) {
    result.t_stat = r > 0 ? std::numeric_limits<double>::infinity()
                          : -std::numeric_limits<double>::infinity();
    result.p_value = 0.0;
  } else {
    result.t_stat = r * std::sqrt(static_cast<double>(df) / denom);
    result.p_value = student_t_two_sided_p(result.t_stat, df);
  }
  result.reject_h0 = result.p_value <= alpha;
  return result;
}

}  // namespace enercast
