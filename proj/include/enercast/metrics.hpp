#pragma once

#include <span>

namespace enercast {

// rmse = sqrt(mse) by construction. r2 is NaN when the target has zero
// variance (R^2 undefined; the error metrics are still valid).
struct MetricSet {
  double mse = 0.0;
  double rmse = 0.0;
  double mae = 0.0;
  double r2 = 0.0;
};

MetricSet compute_metrics(std::span<const double> y, std::span<const double> predicted);

}  // namespace enercast
