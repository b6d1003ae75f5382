#include "enercast/gbt.hpp"

#include "enercast/error.hpp"

namespace enercast {

GradientBoostedTrees GradientBoostedTrees::fit(const Matrix& X, std::span<const double> y,
                                               const GbtParams& params, Exec exec) {
  if (params.n_trees < 1) fail(ErrorKind::Usage, "gbt: n_trees must be >= 1");
  if (X.rows() != y.size()) fail(ErrorKind::LengthMismatch, "gbt: X rows and y length differ");
  if (X.rows() == 0) fail(ErrorKind::InsufficientRows, "gbt: cannot fit on zero rows");

  GradientBoostedTrees model;
  model.learning_rate_ = params.learning_rate;

  const double n = static_cast<double>(y.size());
  double sum = 0.0;
  for (double v : y) sum += v;
  model.base_ = sum / n;

  std::vector<double> residual(y.size());
  double sse = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    residual[i] = y[i] - model.base_;
    sse += residual[i] * residual[i];
  }
  model.staged_training_mse_.push_back(sse / n);

  const TreeParams tree_params{params.max_depth, params.min_samples_leaf};
  for (std::size_t stage = 0; stage < params.n_trees; ++stage) {
    RegressionTree tree = RegressionTree::fit(X, residual, tree_params, exec);
    sse = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      residual[i] -= params.learning_rate * tree.predict_one(X.row(i));
      sse += residual[i] * residual[i];
    }
    model.staged_training_mse_.push_back(sse / n);
    model.trees_.push_back(std::move(tree));
  }
  return model;
}

double GradientBoostedTrees::predict_one(std::span<const double> x) const {
  double acc = base_;
  for (const auto& tree : trees_) acc += learning_rate_ * tree.predict_one(x);
  return acc;
}

std::vector<double> GradientBoostedTrees::predict(const Matrix& X) const {
  std::vector<double> out(X.rows(), 0.0);
  for (std::size_t i = 0; i < X.rows(); ++i) out[i] = predict_one(X.row(i));
  return out;
}

GradientBoostedTrees GradientBoostedTrees::from_parts(double base, double learning_rate,
                                                      std::vector<RegressionTree> trees) {
  GradientBoostedTrees model;
  model.base_ = base;
  model.learning_rate_ = learning_rate;
  model.trees_ = std::move(trees);
  return model;
}

}  // namespace enercast
