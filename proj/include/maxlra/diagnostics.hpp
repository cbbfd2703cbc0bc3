#pragma once

#include <cstddef>
#include <span>

#include "maxlra/dense.hpp"
#include "maxlra/linalg.hpp"

namespace maxlra {

// Shape statistics that control how well a matrix can be approximated
// entrywise: spikiness gamma = sqrt(mn) * max_norm / spectral_norm and the
// coherences of the leading singular subspaces.
struct MatrixDiagnostics {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double max_norm = 0.0;
  double spectral_norm = 0.0;
  double fro_norm = 0.0;
  std::size_t rank = 0;  // numerical rank at the requested tolerance
  double spikiness = 0.0;
  double mu_col = 0.0;  // coherence of the column space
  double mu_row = 0.0;  // coherence of the row space
};

// Coherence of the subspace spanned by the orthonormal columns of q:
// (m/k) * max_i ||row_i(q)||^2, in [1, m/k]. Rejects a basis whose Gram
// matrix strays from the identity by more than 1e-8.
double coherence(const DenseMatrix& q);

MatrixDiagnostics diagnose(const DenseMatrix& x, double rank_tol = 1e-10);

// diagnose together with the thin SVD it computed, for callers that need
// both and should not pay for a second factorization.
struct DiagnosticsWithSvd {
  MatrixDiagnostics diag;
  LowRankFactors svd;
};
DiagnosticsWithSvd diagnose_svd(const DenseMatrix& x, double rank_tol = 1e-10);

// sqrt(1 + r/(m-r+1)) * sqrt(1 + r/(n-r+1)) * s[r]; at most 2*s[r] once
// both dimensions reach 2r-1.
double cross_bound(std::span<const double> s, std::size_t r, std::size_t m,
                   std::size_t n);

struct RankBound {
  double value = 0.0;
  double eps = 0.0;    // the distortion the rank r affords
  bool valid = false;  // whether (r, eps) sit inside the guarantee window
};

// Entrywise error available at rank r via random orthonormal projections of
// the split factors: eps = sqrt(k0/r) with k0 = 108*log(m+n+1), value
// (eps/3) * (k*mu_col/m + k*mu_row/n + spikiness/sqrt(mn)) * spectral_norm.
RankBound jl_projection_bound(const MatrixDiagnostics& d, std::size_t r);

// Same at rank r via i.i.d. sub-Gaussian projections: eps = sqrt(k0/r) with
// k0 = C*log(4mn), value eps * (k/sqrt(mn)) * sqrt(mu_col*mu_row) *
// spectral_norm. C is a calibration constant, default 1.
RankBound hanson_wright_bound(const MatrixDiagnostics& d, std::size_t r,
                              double c_const = 1.0);

// Rank sufficient for entrywise error eps relative to max_norm, for
// sign-pattern-bounded matrices: 9*log(n)/(eps^2 - eps^3).
double alon_rank(double eps, std::size_t n);

// Rank sufficient for relative entrywise error eps:
// ceil(72*log(2*min(m,n)+1)/eps^2).
std::size_t udell_rank(double eps, std::size_t m, std::size_t n);

struct BoundReport {
  double ultimate = 0.0;  // max_norm(X), available at every rank >= 1
  double cross = 0.0;     // truncated-SVD cross bound at rank r
  RankBound jl;
  RankBound hw;
  double hw_constant = 1.0;
  double alon_rank = 0.0;
  std::size_t udell_rank = 0;
};

// One-shot diagnostics plus all bounds at rank r (single SVD inside).
// eps_for_ranks feeds the two rank formulas.
struct DiagnosticReport {
  MatrixDiagnostics diag;
  BoundReport bounds;
};
DiagnosticReport diagnostic_report(const DenseMatrix& x, std::size_t r,
                                   double hw_constant = 1.0,
                                   double eps_for_ranks = 0.5,
                                   double rank_tol = 1e-10);

}  // namespace maxlra
