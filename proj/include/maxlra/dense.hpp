#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "maxlra/errors.hpp"

namespace maxlra {

// Row-major dense matrix of doubles. Everything in this library runs at
// desk scale, so one flat vector is the only storage we need.
class DenseMatrix {
 public:
  DenseMatrix() = default;

  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {
    require(rows >= 1 && cols >= 1, ErrorCode::InvalidArgument,
            "matrix dimensions must be at least 1x1");
  }

  // Takes ownership of `data` (row-major); rejects non-finite entries.
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  std::span<const double> values() const { return data_; }

  bool same_shape(const DenseMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

DenseMatrix transpose(const DenseMatrix& a);

// a * b
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
// a^T * b
DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b);
// a * b^T
DenseMatrix matmul_a_bt(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix scaled(const DenseMatrix& a, double factor);

}  // namespace maxlra
