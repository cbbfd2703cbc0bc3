#include "maxlra/construct.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "maxlra/errors.hpp"

namespace maxlra {

namespace {

struct SplitWithDiag {
  SplitFactors split;
  MatrixDiagnostics diag;
};

SplitWithDiag split_with_diag(const DenseMatrix& x, double rank_tol) {
  DiagnosticsWithSvd ds = diagnose_svd(x, rank_tol);
  const MatrixDiagnostics& d = ds.diag;
  const LowRankFactors& f = ds.svd;
  const std::size_t k = d.rank;

  SplitFactors sf;
  sf.utilde = DenseMatrix(x.rows(), k);
  sf.vtilde = DenseMatrix(x.cols(), k);
  for (std::size_t j = 0; j < k; ++j) {
    const double root = std::sqrt(f.s[j]);
    for (std::size_t i = 0; i < x.rows(); ++i) sf.utilde(i, j) = f.U(i, j) * root;
    for (std::size_t i = 0; i < x.cols(); ++i) sf.vtilde(i, j) = f.V(i, j) * root;
  }
  return {std::move(sf), d};
}

double product_error(const DenseMatrix& x, const DenseMatrix& l,
                     const DenseMatrix& r, double factor) {
  // max_norm(X - factor * L R^T) without materializing the product.
  const std::size_t k = l.cols();
  double worst = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double* li = l.row(i);
    const double* xi = x.row(i);
    for (std::size_t j = 0; j < x.cols(); ++j) {
      const double* rj = r.row(j);
      double acc = 0.0;
      for (std::size_t t = 0; t < k; ++t) acc += li[t] * rj[t];
      worst = std::max(worst, std::abs(xi[j] - factor * acc));
    }
  }
  return worst;
}

}  // namespace

SplitFactors split_factors(const DenseMatrix& x, double rank_tol) {
  return split_with_diag(x, rank_tol).split;
}

Approximant jl_approximant(const DenseMatrix& x, std::size_t r,
                           std::size_t trials, const Rng& rng) {
  require(trials >= 1, ErrorCode::InvalidArgument, "trials must be >= 1");
  SplitWithDiag sd = split_with_diag(x, 1e-10);
  const std::size_t k = sd.diag.rank;
  require(r >= 1 && r <= k, ErrorCode::InvalidRank,
          "jl_approximant: rank exceeds the numerical rank of the input");

  const double scale = static_cast<double>(k) / static_cast<double>(r);
  const double fro_scale = 1e-12;  // full-rank test threshold for the draw
  ConstructReport rep;
  DenseMatrix best_l, best_r;
  double best_err = std::numeric_limits<double>::infinity();

  for (std::size_t t = 0; t < trials; ++t) {
    Rng sub = rng.substream(t);
    rep.trials_used = t + 1;
    DenseMatrix g = gaussian_matrix(k, r, sub);

    QrThin qr = detail::householder_qr(g);
    bool full_rank = true;
    const double gscale = fro_norm(g);
    for (std::size_t j = 0; j < r; ++j)
      full_rank = full_rank && qr.R(j, j) > fro_scale * gscale;
    if (!full_rank) continue;  // redraw on the next substream

    DenseMatrix l = matmul(sd.split.utilde, qr.Q);
    DenseMatrix rt = matmul(sd.split.vtilde, qr.Q);
    const double err = product_error(x, l, rt, scale);
    rep.trial_errors.push_back(err);
    if (err < best_err) {
      best_err = err;
      best_l = std::move(l);
      best_r = std::move(rt);
      rep.best_trial = t;
      rep.best_seed = sub.seed();
    }
    if (err <= 1e-14 * sd.diag.spectral_norm) break;  // exact capture
  }
  require(!rep.trial_errors.empty(), ErrorCode::NoConvergence,
          "jl_approximant: every draw was rank-deficient");

  Approximant out;
  out.y = factors_from_product(scaled(best_l, scale), best_r, -1.0);
  RankBound b = jl_projection_bound(sd.diag, r);
  rep.achieved_error = best_err;
  rep.theoretical_bound = b.value;
  rep.bound_eps = b.eps;
  rep.bound_valid = b.valid;
  rep.rank = out.y.rank();
  out.report = std::move(rep);
  return out;
}

Approximant hw_approximant(const DenseMatrix& x, std::size_t r, XiDist dist,
                           std::size_t trials, const Rng& rng) {
  require(trials >= 1, ErrorCode::InvalidArgument, "trials must be >= 1");
  SplitWithDiag sd = split_with_diag(x, 1e-10);
  const std::size_t k = sd.diag.rank;
  require(r >= 1 && r <= k, ErrorCode::InvalidRank,
          "hw_approximant: rank exceeds the numerical rank of the input");

  // E|xi|^2 = 1 for both distributions, so the unbiasing factor is 1.
  const double unbias = 1.0;
  const double entry_scale = 1.0 / std::sqrt(static_cast<double>(r));
  ConstructReport rep;
  DenseMatrix best_l, best_r;
  double best_err = std::numeric_limits<double>::infinity();

  for (std::size_t t = 0; t < trials; ++t) {
    Rng sub = rng.substream(t);
    rep.trials_used = t + 1;
    DenseMatrix q = dist == XiDist::Rademacher
                        ? rademacher_matrix(k, r, sub, entry_scale)
                        : [&] {
                            DenseMatrix g = gaussian_matrix(k, r, sub);
                            for (std::size_t i = 0; i < g.size(); ++i)
                              g.data()[i] *= entry_scale;
                            return g;
                          }();

    DenseMatrix l = matmul(sd.split.utilde, q);
    DenseMatrix rt = matmul(sd.split.vtilde, q);
    const double err = product_error(x, l, rt, unbias);
    rep.trial_errors.push_back(err);
    if (err < best_err) {
      best_err = err;
      best_l = std::move(l);
      best_r = std::move(rt);
      rep.best_trial = t;
      rep.best_seed = sub.seed();
    }
    if (err <= 1e-14 * sd.diag.spectral_norm) break;
  }

  Approximant out;
  out.y = factors_from_product(scaled(best_l, unbias), best_r, 1e-12);
  RankBound b = hanson_wright_bound(sd.diag, r, 1.0);
  rep.achieved_error = best_err;
  rep.theoretical_bound = b.value;
  rep.bound_eps = b.eps;
  rep.bound_valid = b.valid;
  rep.rank = out.y.rank();
  out.report = std::move(rep);
  return out;
}

VerifyResult verify_construction(const DenseMatrix& x, const LowRankFactors& y,
                                 double bound) {
  require(bound >= 0.0, ErrorCode::InvalidArgument, "bound must be >= 0");
  DenseMatrix yd = y.reconstruct();
  require(x.same_shape(yd), ErrorCode::ShapeMismatch,
          "verify_construction: shape mismatch");
  const double err = max_norm(x - yd);
  VerifyResult v;
  v.within = err <= bound;
  v.ratio = bound > 0.0 ? err / bound
            : err == 0.0 ? 0.0
                         : std::numeric_limits<double>::infinity();
  return v;
}

}  // namespace maxlra
