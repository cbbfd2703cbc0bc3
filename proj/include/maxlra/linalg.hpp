#pragma once

#include <cstddef>
#include <vector>

#include "maxlra/dense.hpp"
#include "maxlra/rng.hpp"

namespace maxlra {

// Thin SVD-style factorization U diag(s) V^T with orthonormal U, V columns
// and nonincreasing nonnegative s.
struct LowRankFactors {
  DenseMatrix U;          // m x r
  std::vector<double> s;  // length r
  DenseMatrix V;          // n x r

  std::size_t rank() const { return s.size(); }
  DenseMatrix reconstruct() const;
  LowRankFactors truncated(std::size_t r) const;
};

// Largest entry magnitude (the norm this whole library optimizes in).
double max_norm(const DenseMatrix& a);
double fro_norm(const DenseMatrix& a);

struct QrThin {
  DenseMatrix Q;  // m x k, orthonormal columns
  DenseMatrix R;  // k x k, upper triangular, nonnegative diagonal
};

// Householder thin QR for m >= k. Throws RankDeficient when a diagonal of R
// falls below 1e-12 times the Frobenius scale of the input.
QrThin qr_thin(const DenseMatrix& a);

// Dense thin SVD by one-sided Jacobi rotations applied on whichever side
// keeps the implicit Gram matrix smaller. Meant for min(m,n) up to ~512.
LowRankFactors svd_dense(const DenseMatrix& a);

// Randomized truncated SVD (Gaussian sketch, QR range finder, subspace power
// iterations). Bit-reproducible for a fixed rng state.
LowRankFactors rsvd_truncate(const DenseMatrix& a, std::size_t r,
                             std::size_t oversample, std::size_t power_iters,
                             Rng& rng);

struct SpectralEstimate {
  double value = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
};

inline constexpr std::uint64_t kSpectralSeed = 0x5EED;

// Power iteration on A^T A from a seeded start; exact dense SVD when the
// small dimension is at most 64. Non-convergence is reported in the flag,
// value still carries the best estimate.
SpectralEstimate spectral_norm_detail(const DenseMatrix& a, double tol,
                                      std::size_t max_iter,
                                      std::uint64_t seed = kSpectralSeed);
double spectral_norm(const DenseMatrix& a, double tol = 1e-8);

// i.i.d. fills in row-major draw order (tests re-create draws relying on this).
DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);
DenseMatrix rademacher_matrix(std::size_t rows, std::size_t cols, Rng& rng,
                              double scale = 1.0);

// Compress L * R^T into SVD-form factors. Singular values at or below
// drop_tol * s_max are truncated away; drop_tol < 0 keeps every column.
LowRankFactors factors_from_product(const DenseMatrix& l, const DenseMatrix& r,
                                    double drop_tol);

namespace detail {

// Householder QR without the rank check; Q always has orthonormal columns
// even when the input is rank-deficient.
QrThin householder_qr(const DenseMatrix& a);

}  // namespace detail

}  // namespace maxlra
