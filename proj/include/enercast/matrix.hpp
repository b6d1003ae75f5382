#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace enercast {

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Contiguous row range [row_begin, row_end) of a matrix.
struct MatrixView {
  const Matrix* matrix = nullptr;
  std::size_t row_begin = 0;
  std::size_t row_end = 0;

  std::size_t rows() const { return row_end - row_begin; }
  std::size_t cols() const { return matrix ? matrix->cols() : 0; }
  double operator()(std::size_t r, std::size_t c) const {
    return (*matrix)(row_begin + r, c);
  }
  std::span<const double> row(std::size_t r) const { return matrix->row(row_begin + r); }

  Matrix materialize() const {
    Matrix out(rows(), cols());
    for (std::size_t r = 0; r < rows(); ++r) {
      const auto src = row(r);
      auto dst = out.row(r);
      for (std::size_t c = 0; c < src.size(); ++c) dst[c] = src[c];
    }
    return out;
  }
};

}  // namespace enercast
