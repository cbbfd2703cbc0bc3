#pragma once

#include <cstdint>
#include <string_view>

#include "maxlra/dense.hpp"
#include "maxlra/rng.hpp"

namespace maxlra {

enum class MatrixClass {
  Identity,
  Hadamard,
  Uniform,
  Banded,
  StiefelProduct,
};

MatrixClass matrix_class_from_name(std::string_view name);
std::string_view matrix_class_name(MatrixClass cls);

// Everything needed to reproduce one test matrix bit-for-bit.
struct MatrixSpec {
  MatrixClass cls = MatrixClass::Identity;
  std::size_t n = 1;
  std::size_t band = 1;         // Banded only
  std::size_t factor_rank = 1;  // StiefelProduct only
  std::uint64_t seed = 0;
  bool normalize = false;  // StiefelProduct only: scale to unit max norm
};

DenseMatrix generate(const MatrixSpec& spec);

DenseMatrix identity_matrix(std::size_t n);

// i.i.d. Uniform(-1,1) entries, drawn in row-major order.
DenseMatrix uniform_matrix(std::size_t n, Rng& rng);

// Uniform(-1,1) on the band |i-j| < b, zero elsewhere; draws visit only
// in-band entries in row-major order, so band = n reproduces uniform_matrix
// for the same rng state.
DenseMatrix banded_uniform(std::size_t n, std::size_t band, Rng& rng);

// Q1 * Q2^T with Q1, Q2 independent n x k orthonormal factors obtained by
// QR of Gaussian matrices (R diagonals kept positive, so the factors follow
// the rotation-invariant distribution on the Stiefel manifold).
DenseMatrix stiefel_product(std::size_t n, std::size_t k, Rng& rng,
                            bool normalize = false);

// Sylvester construction; n must be a power of two.
DenseMatrix hadamard(std::size_t n);

}  // namespace maxlra
