#include "enercast/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "enercast/error.hpp"

namespace enercast {

namespace {

struct SplitCandidate {
  bool valid = false;
  double sse = std::numeric_limits<double>::infinity();
  double threshold = 0.0;
};

// Best split of `rows` on one feature: scan boundaries between distinct
// sorted values with prefix sums. Within a feature the first (lowest)
// threshold wins ties via strict improvement.
SplitCandidate best_split_for_feature(const Matrix& X, std::span<const double> y,
                                      const std::vector<std::size_t>& rows, std::size_t feature,
                                      std::size_t min_samples_leaf,
                                      std::vector<std::size_t>& order_scratch) {
  const std::size_t n = rows.size();
  order_scratch.assign(rows.begin(), rows.end());
  std::sort(order_scratch.begin(), order_scratch.end(), [&](std::size_t a, std::size_t b) {
    const double va = X(a, feature);
    const double vb = X(b, feature);
    if (va != vb) return va < vb;
    return a < b;
  });

  double total_sum = 0.0;
  double total_sq = 0.0;
  for (std::size_t idx : order_scratch) {
    total_sum += y[idx];
    total_sq += y[idx] * y[idx];
  }

  SplitCandidate best;
  double left_sum = 0.0;
  double left_sq = 0.0;
  for (std::size_t pos = 0; pos + 1 < n; ++pos) {
    const double value = y[order_scratch[pos]];
    left_sum += value;
    left_sq += value * value;

    const double x_here = X(order_scratch[pos], feature);
    const double x_next = X(order_scratch[pos + 1], feature);
    if (x_here == x_next) continue;

    const std::size_t left_count = pos + 1;
    const std::size_t right_count = n - left_count;
    if (left_count < min_samples_leaf || right_count < min_samples_leaf) continue;

    double threshold = 0.5 * (x_here + x_next);
    if (threshold >= x_next) threshold = x_here;  // midpoint collapsed in fp

    const double right_sum = total_sum - left_sum;
    const double right_sq = total_sq - left_sq;
    const double sse_left = std::max(0.0, left_sq - left_sum * left_sum / left_count);
    const double sse_right = std::max(0.0, right_sq - right_sum * right_sum / right_count);
    const double sse = sse_left + sse_right;
    if (sse < best.sse) {
      best.valid = true;
      best.sse = sse;
      best.threshold = threshold;
    }
  }
  return best;
}

}  // namespace

RegressionTree RegressionTree::fit(const Matrix& X, std::span<const double> y,
                                   const TreeParams& params, Exec exec) {
  if (X.rows() != y.size()) fail(ErrorKind::LengthMismatch, "tree: X rows and y length differ");
  if (X.rows() == 0) fail(ErrorKind::InsufficientRows, "tree: cannot fit on zero rows");
  const std::size_t min_leaf = std::max<std::size_t>(1, params.min_samples_leaf);

  RegressionTree tree;
  struct Work {
    std::size_t node;
    std::vector<std::size_t> rows;
    std::size_t depth;
  };

  std::vector<std::size_t> all_rows(X.rows());
  for (std::size_t i = 0; i < X.rows(); ++i) all_rows[i] = i;

  std::vector<Work> stack;
  tree.nodes_.push_back({});
  stack.push_back({0, std::move(all_rows), 0});

  while (!stack.empty()) {
    Work work = std::move(stack.back());
    stack.pop_back();
    TreeNode& node = tree.nodes_[work.node];
    node.count = work.rows.size();

    double sum = 0.0;
    for (std::size_t idx : work.rows) sum += y[idx];
    node.value = sum / static_cast<double>(work.rows.size());

    bool pure = true;
    for (std::size_t idx : work.rows) {
      if (y[idx] != y[work.rows[0]]) {
        pure = false;
        break;
      }
    }
    if (pure || work.depth >= params.max_depth || work.rows.size() < 2 * min_leaf) continue;

    // Independent best-candidate search per feature, ranked afterwards in
    // fixed feature order so the result is thread-count invariant.
    std::vector<SplitCandidate> candidates(X.cols());
    parallel_for(X.cols(), exec, [&](std::size_t feature) {
      std::vector<std::size_t> scratch;
      candidates[feature] =
          best_split_for_feature(X, y, work.rows, feature, min_leaf, scratch);
    });

    std::size_t best_feature = 0;
    SplitCandidate best;
    for (std::size_t feature = 0; feature < candidates.size(); ++feature) {
      const SplitCandidate& cand = candidates[feature];
      if (!cand.valid) continue;
      if (!best.valid || cand.sse < best.sse) {
        best = cand;
        best_feature = feature;
      }
    }
    if (!best.valid) continue;

    node.feature = best_feature;
    node.threshold = best.threshold;

    std::vector<std::size_t> left_rows;
    std::vector<std::size_t> right_rows;
    left_rows.reserve(work.rows.size());
    right_rows.reserve(work.rows.size());
    for (std::size_t idx : work.rows) {
      (X(idx, best_feature) <= best.threshold ? left_rows : right_rows).push_back(idx);
    }

    const int left_id = static_cast<int>(tree.nodes_.size());
    node.left = left_id;
    node.right = left_id + 1;
    tree.nodes_.push_back({});
    tree.nodes_.push_back({});
    // Right pushed first so the left subtree is laid out immediately after
    // its parent.
    stack.push_back({static_cast<std::size_t>(left_id + 1), std::move(right_rows), work.depth + 1});
    stack.push_back({static_cast<std::size_t>(left_id), std::move(left_rows), work.depth + 1});
  }
  return tree;
}

std::size_t RegressionTree::leaf_index(std::span<const double> x) const {
  std::size_t node = 0;
  while (!nodes_[node].is_leaf()) {
    const TreeNode& n = nodes_[node];
    node = static_cast<std::size_t>(x[n.feature] <= n.threshold ? n.left : n.right);
  }
  return node;
}

double RegressionTree::predict_one(std::span<const double> x) const {
  return nodes_[leaf_index(x)].value;
}

std::vector<double> RegressionTree::predict(const Matrix& X) const {
  std::vector<double> out(X.rows(), 0.0);
  for (std::size_t i = 0; i < X.rows(); ++i) out[i] = predict_one(X.row(i));
  return out;
}

}  // namespace enercast
