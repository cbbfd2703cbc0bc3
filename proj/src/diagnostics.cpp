#include "maxlra/diagnostics.hpp"

#include <cmath>

#include "maxlra/errors.hpp"

namespace maxlra {

namespace {

double coherence_unchecked(const DenseMatrix& q) {
  const double m = static_cast<double>(q.rows());
  const double k = static_cast<double>(q.cols());
  double worst = 0.0;
  for (std::size_t i = 0; i < q.rows(); ++i) {
    const double* qi = q.row(i);
    double rsq = 0.0;
    for (std::size_t j = 0; j < q.cols(); ++j) rsq += qi[j] * qi[j];
    worst = std::max(worst, rsq);
  }
  return (m / k) * worst;
}

}  // namespace

DiagnosticsWithSvd diagnose_svd(const DenseMatrix& x, double rank_tol) {
  require(rank_tol >= 0.0, ErrorCode::InvalidArgument,
          "diagnose: rank_tol must be nonnegative");
  MatrixDiagnostics d;
  d.rows = x.rows();
  d.cols = x.cols();
  d.max_norm = max_norm(x);
  require(d.max_norm > 0.0, ErrorCode::ZeroMatrix,
          "diagnose: zero matrix has no meaningful diagnostics");
  d.fro_norm = fro_norm(x);

  LowRankFactors f = svd_dense(x);
  d.spectral_norm = f.s.front();
  std::size_t k = 0;
  while (k < f.rank() && f.s[k] > rank_tol * f.s.front()) ++k;
  d.rank = k;
  d.spikiness = std::sqrt(static_cast<double>(d.rows) *
                          static_cast<double>(d.cols)) *
                d.max_norm / d.spectral_norm;
  LowRankFactors lead = f.truncated(k);
  d.mu_col = coherence_unchecked(lead.U);
  d.mu_row = coherence_unchecked(lead.V);
  return {d, std::move(f)};
}

double coherence(const DenseMatrix& q) {
  require(q.rows() >= q.cols(), ErrorCode::ShapeMismatch,
          "coherence: expects rows >= cols");
  DenseMatrix gram = matmul_at_b(q, q);
  for (std::size_t i = 0; i < gram.rows(); ++i)
    gram(i, i) -= 1.0;
  require(max_norm(gram) <= 1e-8, ErrorCode::NotOrthonormal,
          "coherence: columns are not orthonormal");
  return coherence_unchecked(q);
}

MatrixDiagnostics diagnose(const DenseMatrix& x, double rank_tol) {
  return diagnose_svd(x, rank_tol).diag;
}

double cross_bound(std::span<const double> s, std::size_t r, std::size_t m,
                   std::size_t n) {
  require(r >= 1 && r < std::min(m, n), ErrorCode::InvalidRank,
          "cross_bound: requires 1 <= r < min(m,n)");
  require(s.size() > r, ErrorCode::InvalidRank,
          "cross_bound: needs singular value r+1");
  const double mm = static_cast<double>(m), nn = static_cast<double>(n),
               rr = static_cast<double>(r);
  return std::sqrt(1.0 + rr / (mm - rr + 1.0)) *
         std::sqrt(1.0 + rr / (nn - rr + 1.0)) * s[r];
}

RankBound jl_projection_bound(const MatrixDiagnostics& d, std::size_t r) {
  require(r >= 1, ErrorCode::InvalidRank, "rank must be at least 1");
  const double m = static_cast<double>(d.rows), n = static_cast<double>(d.cols);
  const double k = static_cast<double>(d.rank);
  const double k0 = 108.0 * std::log(m + n + 1.0);
  RankBound b;
  b.eps = std::sqrt(k0 / static_cast<double>(r));
  b.valid = b.eps < 1.0 && r < d.rank;
  b.value = (b.eps / 3.0) *
            (k * d.mu_col / m + k * d.mu_row / n + d.spikiness / std::sqrt(m * n)) *
            d.spectral_norm;
  return b;
}

RankBound hanson_wright_bound(const MatrixDiagnostics& d, std::size_t r,
                              double c_const) {
  require(r >= 1, ErrorCode::InvalidRank, "rank must be at least 1");
  require(c_const > 0.0, ErrorCode::InvalidArgument,
          "hanson_wright_bound: constant must be positive");
  const double m = static_cast<double>(d.rows), n = static_cast<double>(d.cols);
  const double k = static_cast<double>(d.rank);
  const double k0 = c_const * std::log(4.0 * m * n);
  RankBound b;
  b.eps = std::sqrt(k0 / static_cast<double>(r));
  b.valid = b.eps <= 1.0 && r <= d.rank;
  b.value = b.eps * (k / std::sqrt(m * n)) * std::sqrt(d.mu_col * d.mu_row) *
            d.spectral_norm;
  return b;
}

double alon_rank(double eps, std::size_t n) {
  require(eps > 0.0 && eps < 1.0, ErrorCode::InvalidEps,
          "alon_rank: eps must lie in (0,1)");
  require(n >= 1, ErrorCode::InvalidArgument, "alon_rank: n must be >= 1");
  const double e2 = eps * eps;
  return 9.0 * std::log(static_cast<double>(n)) / (e2 - e2 * eps);
}

std::size_t udell_rank(double eps, std::size_t m, std::size_t n) {
  // eps = 1 is allowed: the formula is still evaluated at the window edge.
  require(eps > 0.0 && eps <= 1.0, ErrorCode::InvalidEps,
          "udell_rank: eps must lie in (0,1]");
  require(m >= 1 && n >= 1, ErrorCode::InvalidArgument,
          "udell_rank: dimensions must be >= 1");
  const double mind = static_cast<double>(std::min(m, n));
  return static_cast<std::size_t>(
      std::ceil(72.0 * std::log(2.0 * mind + 1.0) / (eps * eps)));
}

DiagnosticReport diagnostic_report(const DenseMatrix& x, std::size_t r,
                                   double hw_constant, double eps_for_ranks,
                                   double rank_tol) {
  require(r >= 1, ErrorCode::InvalidRank, "rank must be at least 1");
  require(eps_for_ranks > 0.0 && eps_for_ranks <= 1.0, ErrorCode::InvalidEps,
          "diagnostic_report: eps must lie in (0,1]");
  DiagnosticsWithSvd sd = diagnose_svd(x, rank_tol);
  DiagnosticReport rep;
  rep.diag = sd.diag;
  rep.bounds.ultimate = sd.diag.max_norm;
  rep.bounds.cross = r < std::min(x.rows(), x.cols())
                         ? cross_bound(sd.svd.s, r, x.rows(), x.cols())
                         : 0.0;
  rep.bounds.jl = jl_projection_bound(sd.diag, r);
  rep.bounds.hw = hanson_wright_bound(sd.diag, r, hw_constant);
  rep.bounds.hw_constant = hw_constant;
  rep.bounds.alon_rank = eps_for_ranks < 1.0 ? alon_rank(eps_for_ranks, x.cols()) : 0.0;
  rep.bounds.udell_rank = udell_rank(eps_for_ranks, x.rows(), x.cols());
  return rep;
}

}  // namespace maxlra
