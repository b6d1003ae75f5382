#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "enercast/matrix.hpp"
#include "enercast/parallel.hpp"

namespace enercast {

struct TreeParams {
  std::size_t max_depth = 12;
  std::size_t min_samples_leaf = 5;
};

struct TreeNode {
  int left = -1;   // -1 marks a leaf
  int right = -1;
  std::size_t feature = 0;
  double threshold = 0.0;  // rule: x[feature] <= threshold goes left
  double value = 0.0;      // node mean, the leaf prediction
  std::size_t count = 0;   // training rows reaching the node

  bool is_leaf() const { return left < 0; }
};

// Binary CART regression tree: greedy split over all (feature, midpoint)
// candidates minimizing within-node squared error; ties break toward the
// lower feature index, then the lower threshold. Split search over features
// runs under Exec with identical results either way.
class RegressionTree {
 public:
  static RegressionTree fit(const Matrix& X, std::span<const double> y, const TreeParams& params,
                            Exec exec = Exec::Parallel);

  double predict_one(std::span<const double> x) const;
  std::vector<double> predict(const Matrix& X) const;

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::vector<TreeNode>& mutable_nodes() { return nodes_; }

  // Index of the leaf a sample lands in; used to audit predictions.
  std::size_t leaf_index(std::span<const double> x) const;

 private:
  std::vector<TreeNode> nodes_;
};

}  // namespace enercast
