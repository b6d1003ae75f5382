#include "enercast/svr.hpp"

#include <cmath>
#include <numeric>

#include "enercast/error.hpp"
#include "enercast/rng.hpp"

namespace enercast {

namespace {

double objective(std::span<const double> w, double b, const Matrix& X, std::span<const double> y,
                 double epsilon, double C) {
  double reg = 0.0;
  for (double v : w) reg += v * v;
  double loss = 0.0;
  for (std::size_t i = 0; i < X.rows(); ++i) {
    const auto row = X.row(i);
    double pred = b;
    for (std::size_t j = 0; j < row.size(); ++j) pred += w[j] * row[j];
    const double slack = std::fabs(y[i] - pred) - epsilon;
    if (slack > 0.0) loss += slack;
  }
  return 0.5 * reg + C * loss;
}

}  // namespace

SvrModel fit_svr(const Matrix& X, std::span<const double> y, const SvrParams& params) {
  if (X.rows() != y.size()) fail(ErrorKind::LengthMismatch, "svr: X rows and y length differ");
  if (X.rows() == 0) fail(ErrorKind::InsufficientRows, "svr: cannot fit on zero rows");
  if (params.epsilon < 0.0) fail(ErrorKind::Usage, "svr: epsilon must be >= 0");
  if (params.C < 0.0) fail(ErrorKind::Usage, "svr: C must be >= 0");

  const std::size_t n = X.rows();
  const std::size_t dim = X.cols();
  const double inv_n = 1.0 / static_cast<double>(n);

  SvrModel model;
  model.weights.assign(dim, 0.0);
  model.bias = 0.0;

  std::vector<double> best_w = model.weights;
  double best_b = 0.0;
  double best_objective = objective(model.weights, model.bias, X, y, params.epsilon, params.C);
  model.objective_trace.push_back(best_objective);

  Rng rng(derive_stream(params.seed, 0x5f72));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t idx : order) {
      const auto row = X.row(idx);
      double pred = model.bias;
      for (std::size_t j = 0; j < dim; ++j) pred += model.weights[j] * row[j];
      const double v = y[idx] - pred;

      // Per-sample subgradient of (0.5/n)||w||^2 + C * mean(loss).
      const double shrink = 1.0 - params.step * inv_n;
      double sign = 0.0;
      if (v > params.epsilon) {
        sign = 1.0;
      } else if (v < -params.epsilon) {
        sign = -1.0;
      }
      for (std::size_t j = 0; j < dim; ++j) {
        model.weights[j] = model.weights[j] * shrink + params.step * params.C * sign * row[j];
      }
      model.bias += params.step * params.C * sign;
    }

    const double epoch_objective =
        objective(model.weights, model.bias, X, y, params.epsilon, params.C);
    model.objective_trace.push_back(epoch_objective);
    if (epoch_objective < best_objective) {
      best_objective = epoch_objective;
      best_w = model.weights;
      best_b = model.bias;
    }
  }

  model.weights = std::move(best_w);
  model.bias = best_b;
  return model;
}

double svr_objective(const SvrModel& model, const Matrix& X, std::span<const double> y,
                     double epsilon, double C) {
  return objective(model.weights, model.bias, X, y, epsilon, C);
}

std::vector<double> svr_predict(const SvrModel& model, const Matrix& X) {
  if (X.rows() > 0 && X.cols() != model.weights.size()) {
    fail(ErrorKind::ShapeMismatch, "svr: feature width mismatch");
  }
  std::vector<double> out(X.rows(), 0.0);
  for (std::size_t i = 0; i < X.rows(); ++i) {
    const auto row = X.row(i);
    double pred = model.bias;
    for (std::size_t j = 0; j < row.size(); ++j) pred += model.weights[j] * row[j];
    out[i] = pred;
  }
  return out;
}

}  // namespace enercast
