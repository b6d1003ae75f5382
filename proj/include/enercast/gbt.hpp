#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "enercast/matrix.hpp"
#include "enercast/parallel.hpp"
#include "enercast/tree.hpp"

namespace enercast {

struct GbtParams {
  std::size_t n_trees = 100;
  double learning_rate = 0.1;
  std::size_t max_depth = 3;
  std::size_t min_samples_leaf = 1;
};

// Stagewise regression trees on residuals under squared loss:
// F_0 = mean(y), F_m = F_{m-1} + eta * tree_m(residuals).
class GradientBoostedTrees {
 public:
  static GradientBoostedTrees fit(const Matrix& X, std::span<const double> y,
                                  const GbtParams& params, Exec exec = Exec::Parallel);

  double predict_one(std::span<const double> x) const;
  std::vector<double> predict(const Matrix& X) const;

  double base() const { return base_; }
  double learning_rate() const { return learning_rate_; }
  const std::vector<RegressionTree>& trees() const { return trees_; }

  // Training MSE after each stage (index 0 = the constant base model).
  const std::vector<double>& staged_training_mse() const { return staged_training_mse_; }

  // Reassembly from serialized parts.
  static GradientBoostedTrees from_parts(double base, double learning_rate,
                                         std::vector<RegressionTree> trees);

 private:
  double base_ = 0.0;
  double learning_rate_ = 0.1;
  std::vector<RegressionTree> trees_;
  std::vector<double> staged_training_mse_;
};

}  // namespace enercast
