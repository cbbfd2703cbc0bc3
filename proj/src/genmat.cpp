#include "maxlra/genmat.hpp"

#include <string>

#include "maxlra/errors.hpp"
#include "maxlra/linalg.hpp"

namespace maxlra {

MatrixClass matrix_class_from_name(std::string_view name) {
  if (name == "identity") return MatrixClass::Identity;
  if (name == "hadamard") return MatrixClass::Hadamard;
  if (name == "uniform") return MatrixClass::Uniform;
  if (name == "banded") return MatrixClass::Banded;
  if (name == "stiefel-product") return MatrixClass::StiefelProduct;
  fail(ErrorCode::InvalidArgument,
       "unknown matrix class: " + std::string(name));
}

std::string_view matrix_class_name(MatrixClass cls) {
  switch (cls) {
    case MatrixClass::Identity: return "identity";
    case MatrixClass::Hadamard: return "hadamard";
    case MatrixClass::Uniform: return "uniform";
    case MatrixClass::Banded: return "banded";
    case MatrixClass::StiefelProduct: return "stiefel-product";
  }
  fail(ErrorCode::InvalidArgument, "unknown matrix class");
}

DenseMatrix generate(const MatrixSpec& spec) {
  Rng rng(spec.seed);
  switch (spec.cls) {
    case MatrixClass::Identity:
      return identity_matrix(spec.n);
    case MatrixClass::Hadamard:
      return hadamard(spec.n);
    case MatrixClass::Uniform:
      return uniform_matrix(spec.n, rng);
    case MatrixClass::Banded:
      return banded_uniform(spec.n, spec.band, rng);
    case MatrixClass::StiefelProduct:
      return stiefel_product(spec.n, spec.factor_rank, rng, spec.normalize);
  }
  fail(ErrorCode::InvalidArgument, "unknown matrix class");
}

DenseMatrix identity_matrix(std::size_t n) {
  require(n >= 1, ErrorCode::InvalidArgument, "identity: n must be >= 1");
  return DenseMatrix::identity(n);
}

DenseMatrix uniform_matrix(std::size_t n, Rng& rng) {
  require(n >= 1, ErrorCode::InvalidArgument, "uniform: n must be >= 1");
  DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double* ai = a.row(i);
    for (std::size_t j = 0; j < n; ++j) ai[j] = rng.uniform_pm1();
  }
  return a;
}

DenseMatrix banded_uniform(std::size_t n, std::size_t band, Rng& rng) {
  require(n >= 1, ErrorCode::InvalidArgument, "banded: n must be >= 1");
  require(band >= 1 && band <= n, ErrorCode::InvalidBand,
          "banded: band must lie in [1, n]");
  DenseMatrix a(n, n);
  const std::ptrdiff_t b = static_cast<std::ptrdiff_t>(band);
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - b + 1);
    const std::ptrdiff_t hi =
        std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(n) - 1, i + b - 1);
    double* ai = a.row(static_cast<std::size_t>(i));
    for (std::ptrdiff_t j = lo; j <= hi; ++j) ai[j] = rng.uniform_pm1();
  }
  return a;
}

DenseMatrix stiefel_product(std::size_t n, std::size_t k, Rng& rng,
                            bool normalize) {
  require(n >= 1, ErrorCode::InvalidArgument, "stiefel: n must be >= 1");
  require(k >= 1 && k <= n, ErrorCode::InvalidRank,
          "stiefel: factor rank must lie in [1, n]");
  DenseMatrix q1 = qr_thin(gaussian_matrix(n, k, rng)).Q;
  DenseMatrix q2 = qr_thin(gaussian_matrix(n, k, rng)).Q;
  DenseMatrix p = matmul_a_bt(q1, q2);
  if (normalize) {
    const double mx = max_norm(p);
    require(mx > 0.0, ErrorCode::ZeroMatrix, "stiefel: degenerate product");
    for (std::size_t i = 0; i < p.size(); ++i) p.data()[i] /= mx;
  }
  return p;
}

DenseMatrix hadamard(std::size_t n) {
  require(n >= 1 && (n & (n - 1)) == 0, ErrorCode::NotPowerOfTwo,
          "hadamard: n must be a power of two");
  DenseMatrix h(n, n);
  h(0, 0) = 1.0;
  for (std::size_t s = 1; s < n; s <<= 1) {
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) {
        const double v = h(i, j);
        h(i, j + s) = v;
        h(i + s, j) = v;
        h(i + s, j + s) = -v;
      }
    }
  }
  return h;
}

}  // namespace maxlra
