#pragma once

#include <cstdint>
#include <vector>

#include "maxlra/dense.hpp"
#include "maxlra/diagnostics.hpp"
#include "maxlra/linalg.hpp"
#include "maxlra/rng.hpp"

namespace maxlra {

// Split form X(i,j) = <row_i(utilde), row_j(vtilde)>, obtained from the thin
// SVD by pushing sqrt(sigma) into both sides. Row norms satisfy
// ||u_i|| <= (k * mu_col / m)^(1/2) * ||X||_2^(1/2) and the analogue for v.
struct SplitFactors {
  DenseMatrix utilde;  // m x k
  DenseMatrix vtilde;  // n x k
};

SplitFactors split_factors(const DenseMatrix& x, double rank_tol = 1e-10);

enum class XiDist {
  Rademacher,
  Gaussian,
};

struct ConstructReport {
  double achieved_error = 0.0;     // max-norm error of the returned Y
  double theoretical_bound = 0.0;  // matching a-priori bound at this rank
  double bound_eps = 0.0;
  bool bound_valid = false;
  std::size_t trials_used = 0;
  std::size_t best_trial = 0;
  std::uint64_t best_seed = 0;  // substream seed that produced the winner
  std::size_t rank = 0;
  std::vector<double> trial_errors;  // per evaluated candidate, draw order
};

struct Approximant {
  LowRankFactors y;
  ConstructReport report;
};

// Best-of-`trials` rank-r approximant Y = (k/r) (U~ Q)(V~ Q)^T with Q an
// orthonormalized k x r Gaussian draw per trial (substreams of rng). Rank of
// Y is exactly r; a rank-deficient draw is redrawn on the next substream and
// still counts against the trial budget. Stops early once a candidate hits
// error <= 1e-14 * ||X||_2.
Approximant jl_approximant(const DenseMatrix& x, std::size_t r,
                           std::size_t trials, const Rng& rng);

// Best-of-`trials` rank-r approximant Y = (1/E|xi|^2) (U~ Q)(V~ Q)^T with Q
// filled i.i.d. by r^(-1/2) * xi (Rademacher or standard Gaussian xi, both
// E|xi|^2 = 1). A degenerate draw only lowers the reported rank.
Approximant hw_approximant(const DenseMatrix& x, std::size_t r, XiDist dist,
                           std::size_t trials, const Rng& rng);

struct VerifyResult {
  bool within = false;
  double ratio = 0.0;  // achieved error / bound
};

VerifyResult verify_construction(const DenseMatrix& x, const LowRankFactors& y,
                                 double bound);

}  // namespace maxlra
