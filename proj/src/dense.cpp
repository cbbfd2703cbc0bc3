#include "maxlra/dense.hpp"

#include <cmath>
#include <utility>

namespace maxlra {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols,
                         std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  require(rows >= 1 && cols >= 1, ErrorCode::InvalidArgument,
          "matrix dimensions must be at least 1x1");
  require(data_.size() == rows * cols, ErrorCode::ShapeMismatch,
          "data length does not match rows*cols");
  for (double v : data_) {
    require(std::isfinite(v), ErrorCode::InvalidArgument,
            "matrix entries must be finite");
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix transpose(const DenseMatrix& a) {
  DenseMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ai = a.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = ai[j];
  }
  return t;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.cols() == b.rows(), ErrorCode::ShapeMismatch,
          "matmul: inner dimensions differ");
  DenseMatrix c(a.rows(), b.cols());
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* ci = c.row(i);
    const double* ai = a.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = ai[k];
      if (aik == 0.0) continue;
      const double* bk = b.row(k);
      for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.rows() == b.rows(), ErrorCode::ShapeMismatch,
          "matmul_at_b: row counts differ");
  DenseMatrix c(a.cols(), b.cols());
  const std::size_t n = b.cols();
  for (std::size_t k = 0; k < a.rows(); ++k) {
    const double* ak = a.row(k);
    const double* bk = b.row(k);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double aki = ak[i];
      if (aki == 0.0) continue;
      double* ci = c.row(i);
      for (std::size_t j = 0; j < n; ++j) ci[j] += aki * bk[j];
    }
  }
  return c;
}

DenseMatrix matmul_a_bt(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.cols() == b.cols(), ErrorCode::ShapeMismatch,
          "matmul_a_bt: column counts differ");
  DenseMatrix c(a.rows(), b.rows());
  const std::size_t kk = a.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ai = a.row(i);
    double* ci = c.row(i);
    for (std::size_t j = 0; j < b.rows(); ++j) {
      const double* bj = b.row(j);
      double acc = 0.0;
      for (std::size_t k = 0; k < kk; ++k) acc += ai[k] * bj[k];
      ci[j] = acc;
    }
  }
  return c;
}

DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.same_shape(b), ErrorCode::ShapeMismatch, "operator+: shape mismatch");
  DenseMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) c.data()[i] = a.data()[i] + b.data()[i];
  return c;
}

DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.same_shape(b), ErrorCode::ShapeMismatch, "operator-: shape mismatch");
  DenseMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) c.data()[i] = a.data()[i] - b.data()[i];
  return c;
}

DenseMatrix scaled(const DenseMatrix& a, double factor) {
  DenseMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) c.data()[i] = factor * a.data()[i];
  return c;
}

}  // namespace maxlra
