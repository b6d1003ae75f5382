#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "enercast/matrix.hpp"
#include "enercast/parallel.hpp"

namespace enercast {

// Brute-force k-nearest-neighbors regression under Euclidean distance.
// Prediction is the unweighted mean of the k nearest targets; distance ties
// break toward the lower row index.
struct KnnModel {
  Matrix train_features;
  std::vector<double> train_targets;
  std::size_t k = 5;
};

KnnModel knn_fit(const Matrix& X, std::span<const double> y, std::size_t k);

double knn_predict_one(const KnnModel& model, std::span<const double> query);

// Queries are independent; Exec::Parallel fans them out over OpenMP.
std::vector<double> knn_predict(const KnnModel& model, const Matrix& X,
                                Exec exec = Exec::Parallel);

}  // namespace enercast
