#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "enercast/matrix.hpp"

namespace enercast {

struct SvrParams {
  double epsilon = 0.1;
  double C = 1.0;
  std::size_t epochs = 120;
  double step = 0.01;
  std::uint64_t seed = 0;
};

struct SvrModel {
  std::vector<double> weights;
  double bias = 0.0;
  // Objective 0.5||w||^2 + C * sum(eps-insensitive loss), per epoch;
  // entry 0 is the w = 0 start.
  std::vector<double> objective_trace;
};

// Linear epsilon-insensitive SVR by seeded stochastic subgradient descent.
// The returned iterate is the epoch snapshot with the lowest objective, so
// it never exceeds the objective at the zero initialization. Expects
// standardized features.
SvrModel fit_svr(const Matrix& X, std::span<const double> y, const SvrParams& params);

double svr_objective(const SvrModel& model, const Matrix& X, std::span<const double> y,
                     double epsilon, double C);

std::vector<double> svr_predict(const SvrModel& model, const Matrix& X);

}  // namespace enercast
