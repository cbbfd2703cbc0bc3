#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "maxlra/dense.hpp"
#include "maxlra/linalg.hpp"
#include "maxlra/rng.hpp"

namespace maxlra {

enum class ApInit {
  GaussianProduct,  // Y0 = G1 G2^T, entries N(0, 1/r)
  WarmStart,        // Y0 from ApConfig::warm_start
};

struct ApConfig {
  double eps = 0.0;
  std::size_t max_iter = 2000;
  double feas_tol = 1e-3;  // relative slack on the feasibility test
  std::size_t stall_window = 50;
  double stall_tol = 1e-4;  // minimal relative progress per window
  std::size_t oversample = 10;
  std::size_t power_iters = 2;
  std::uint64_t seed = 0;
  ApInit init = ApInit::GaussianProduct;
  std::optional<LowRankFactors> warm_start;
};

enum class StopReason {
  Converged,
  Stalled,
  MaxIter,
};

struct ApReport {
  bool feasible = false;
  std::size_t iterations = 0;
  double final_error = 0.0;
  StopReason stop_reason = StopReason::MaxIter;
  std::vector<double> error_history;  // max-norm error per iterate, Y0 first
};

struct ApRun {
  ApReport report;
  LowRankFactors y;  // final iterate, rank <= r
};

// Entrywise clip of Y onto the max-norm ball of radius eps around X. Exact:
// the output never leaves the ball and reapplication is the identity.
DenseMatrix project_ball(const DenseMatrix& y, const DenseMatrix& x,
                         double eps);

// Nearest rank-r matrix (randomized truncated SVD under the hood).
LowRankFactors project_rank(const DenseMatrix& z, std::size_t r,
                            const ApConfig& cfg);
LowRankFactors project_rank(const DenseMatrix& z, std::size_t r,
                            const ApConfig& cfg, Rng& rng);

// Alternate between the two projections until the iterate sits inside the
// ball (feasible), progress stalls, or the iteration budget runs out.
ApRun ap_run(const DenseMatrix& x, std::size_t r, const ApConfig& cfg);

struct Probe {
  double eps = 0.0;
  ApReport report;
};

struct DistanceEstimate {
  double eps_minus = 0.0;  // largest radius a probe declared infeasible
  double eps_plus = 0.0;   // smallest radius certified feasible
  std::vector<Probe> probes;
  LowRankFactors certificate;  // rank <= r, error <= eps_plus*(1+feas_tol)
  double certificate_error = 0.0;
};

// Bisect the feasibility threshold of ap_run over [lo, hi]. The bracket
// bottom is probed first, so inputs already representable at rank r resolve
// in one run with eps_plus at truncation level. Each bisection probe tries
// up to `restarts` seeds (the best certificate so far warm-starts the first
// attempt) and stops at the first feasible one. The zero matrix certifies
// eps = max_norm(X), so the search always returns a valid certificate.
// Pass hi < 0 to start from max_norm(X).
DistanceEstimate estimate_distance(const DenseMatrix& x, std::size_t r,
                                   double lo, double hi, double bs_tol,
                                   std::size_t restarts, const ApConfig& cfg);

}  // namespace maxlra
