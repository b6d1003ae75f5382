#include "enercast/metrics.hpp"

#include <cmath>
#include <limits>

#include "enercast/error.hpp"

namespace enercast {

MetricSet compute_metrics(std::span<const double> y, std::span<const double> predicted) {
  if (y.size() != predicted.size()) {
    fail(ErrorKind::LengthMismatch, "metrics: prediction length mismatch");
  }
  if (y.empty()) fail(ErrorKind::LengthMismatch, "metrics: empty target vector");

  const double n = static_cast<double>(y.size());
  double mean_y = 0.0;
  for (double v : y) mean_y += v;
  mean_y /= n;

  double ss_res = 0.0;
  double abs_sum = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double err = y[i] - predicted[i];
    ss_res += err * err;
    abs_sum += std::fabs(err);
    const double dev = y[i] - mean_y;
    ss_tot += dev * dev;
  }

  MetricSet m;
  m.mse = ss_res / n;
  m.rmse = std::sqrt(m.mse);
  m.mae = abs_sum / n;
  m.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : std::numeric_limits<double>::quiet_NaN();
  return m;
}

}  // namespace enercast
