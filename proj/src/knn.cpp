#include "enercast/knn.hpp"

#include <algorithm>
#include <string>

#include "enercast/error.hpp"

namespace enercast {

KnnModel knn_fit(const Matrix& X, std::span<const double> y, std::size_t k) {
  if (X.rows() != y.size()) {
    fail(ErrorKind::LengthMismatch, "knn: X rows and y length differ");
  }
  if (k < 1 || k > X.rows()) {
    fail(ErrorKind::KTooLarge, "knn: k = " + std::to_string(k) + " with " +
                                   std::to_string(X.rows()) + " training rows");
  }
  return {X, {y.begin(), y.end()}, k};
}

double knn_predict_one(const KnnModel& model, std::span<const double> query) {
  if (query.size() != model.train_features.cols()) {
    fail(ErrorKind::ShapeMismatch, "knn: query width mismatch");
  }
  const std::size_t rows = model.train_features.rows();
  const std::size_t k = model.k;

  // (distance^2, row index); worst candidate kept at the back.
  std::vector<std::pair<double, std::size_t>> nearest;
  nearest.reserve(k + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto row = model.train_features.row(i);
    double d2 = 0.0;
    for (std::size_t c = 0; c < query.size(); ++c) {
      const double diff = row[c] - query[c];
      d2 += diff * diff;
    }
    if (nearest.size() == k && d2 >= nearest.back().first) continue;
    const std::pair<double, std::size_t> candidate{d2, i};
    const auto pos = std::lower_bound(nearest.begin(), nearest.end(), candidate);
    nearest.insert(pos, candidate);
    if (nearest.size() > k) nearest.pop_back();
  }

  std::vector<std::size_t> picked(nearest.size());
  for (std::size_t i = 0; i < nearest.size(); ++i) picked[i] = nearest[i].second;
  std::sort(picked.begin(), picked.end());
  double sum = 0.0;
  for (std::size_t idx : picked) sum += model.train_targets[idx];
  return sum / static_cast<double>(k);
}

std::vector<double> knn_predict(const KnnModel& model, const Matrix& X, Exec exec) {
  if (X.rows() > 0 && X.cols() != model.train_features.cols()) {
    fail(ErrorKind::ShapeMismatch, "knn: query width mismatch");
  }
  std::vector<double> out(X.rows(), 0.0);
  parallel_for(X.rows(), exec, [&](std::size_t i) { out[i] = knn_predict_one(model, X.row(i)); });
  return out;
}

}  // namespace enercast
