#include "maxlra/apsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "maxlra/errors.hpp"

namespace maxlra {

DenseMatrix project_ball(const DenseMatrix& y, const DenseMatrix& x,
                         double eps) {
  require(y.same_shape(x), ErrorCode::ShapeMismatch,
          "project_ball: shape mismatch");
  require(eps >= 0.0 && std::isfinite(eps), ErrorCode::InvalidEps,
          "project_ball: eps must be finite and >= 0");
  DenseMatrix z(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x.data()[i];
    double zi = std::min(std::max(y.data()[i], xi - eps), xi + eps);
    // Clamp in rounded arithmetic can still sit one ulp outside; walk back in.
    while (std::abs(zi - xi) > eps) zi = std::nextafter(zi, xi);
    z.data()[i] = zi;
  }
  return z;
}

LowRankFactors project_rank(const DenseMatrix& z, std::size_t r,
                            const ApConfig& cfg, Rng& rng) {
  return rsvd_truncate(z, r, cfg.oversample, cfg.power_iters, rng);
}

LowRankFactors project_rank(const DenseMatrix& z, std::size_t r,
                            const ApConfig& cfg) {
  Rng rng(cfg.seed);
  return project_rank(z, r, cfg, rng);
}

namespace {

LowRankFactors zero_certificate(std::size_t m, std::size_t n) {
  LowRankFactors f;
  f.U = DenseMatrix(m, 1);
  f.V = DenseMatrix(n, 1);
  f.U(0, 0) = 1.0;
  f.V(0, 0) = 1.0;
  f.s = {0.0};
  return f;
}

}  // namespace

ApRun ap_run(const DenseMatrix& x, std::size_t r, const ApConfig& cfg) {
  require(r >= 1 && r <= std::min(x.rows(), x.cols()), ErrorCode::InvalidRank,
          "ap_run: rank out of range");
  require(cfg.eps >= 0.0 && std::isfinite(cfg.eps), ErrorCode::InvalidEps,
          "ap_run: eps must be finite and >= 0");
  require(cfg.max_iter >= 1 && cfg.stall_window >= 1, ErrorCode::InvalidArgument,
          "ap_run: iteration controls must be >= 1");

  Rng rng(cfg.seed);
  LowRankFactors yf;
  if (cfg.init == ApInit::WarmStart) {
    require(cfg.warm_start.has_value(), ErrorCode::InvalidArgument,
            "ap_run: warm start requested without a starting point");
    require(cfg.warm_start->rank() <= r, ErrorCode::InvalidRank,
            "ap_run: warm start rank exceeds the target rank");
    yf = *cfg.warm_start;
    require(yf.U.rows() == x.rows() && yf.V.rows() == x.cols(),
            ErrorCode::ShapeMismatch, "ap_run: warm start shape mismatch");
  } else {
    const double root = 1.0 / std::sqrt(static_cast<double>(r));
    DenseMatrix g1 = gaussian_matrix(x.rows(), r, rng);
    DenseMatrix g2 = gaussian_matrix(x.cols(), r, rng);
    for (std::size_t i = 0; i < g1.size(); ++i) g1.data()[i] *= root;
    for (std::size_t i = 0; i < g2.size(); ++i) g2.data()[i] *= root;
    yf = factors_from_product(g1, g2, -1.0);
  }

  DenseMatrix y = yf.reconstruct();
  ApReport rep;
  double e = max_norm(x - y);
  rep.error_history.push_back(e);

  // The acceptance threshold carries a truncation-level absolute slack so an
  // input that is exactly representable at rank r certifies eps = 0.
  const double slack = 1e-12 * max_norm(x);

  std::size_t it = 0;
  while (true) {
    if (e <= cfg.eps * (1.0 + cfg.feas_tol) + slack) {
      rep.feasible = true;
      rep.stop_reason = StopReason::Converged;
      break;
    }
    if (it >= cfg.max_iter) {
      rep.stop_reason = StopReason::MaxIter;
      break;
    }
    // A radius-zero ball contains only X, so every cycle past the first just
    // redraws the rank projection of X; no further progress is possible.
    if (cfg.eps == 0.0 && it >= 1) {
      rep.stop_reason = StopReason::Stalled;
      break;
    }
    if (rep.error_history.size() > cfg.stall_window) {
      const double before =
          rep.error_history[rep.error_history.size() - 1 - cfg.stall_window];
      if (before - e < cfg.stall_tol * before) {
        rep.stop_reason = StopReason::Stalled;
        break;
      }
    }
    ++it;
    DenseMatrix z = project_ball(y, x, cfg.eps);
    yf = project_rank(z, r, cfg, rng);
    y = yf.reconstruct();
    e = max_norm(x - y);
    rep.error_history.push_back(e);
  }
  rep.iterations = it;
  rep.final_error = e;
  return {std::move(rep), std::move(yf)};
}

DistanceEstimate estimate_distance(const DenseMatrix& x, std::size_t r,
                                   double lo, double hi, double bs_tol,
                                   std::size_t restarts, const ApConfig& cfg) {
  require(r >= 1 && r <= std::min(x.rows(), x.cols()), ErrorCode::InvalidRank,
          "estimate_distance: rank out of range");
  require(bs_tol > 0.0, ErrorCode::InvalidArgument,
          "estimate_distance: bs_tol must be > 0");
  require(restarts >= 1, ErrorCode::InvalidArgument,
          "estimate_distance: restarts must be >= 1");

  const double mx = max_norm(x);
  DistanceEstimate est;
  est.certificate = zero_certificate(x.rows(), x.cols());
  est.certificate_error = mx;
  if (mx == 0.0) return est;  // the zero matrix is its own approximant

  if (hi < 0.0) hi = mx;
  hi = std::min(hi, mx);
  require(lo >= 0.0 && lo < hi, ErrorCode::InvalidBracket,
          "estimate_distance: requires 0 <= lo < hi");
  est.eps_minus = lo;

  // Probe the bracket bottom once before bisecting. Clipping at radius lo
  // leaves X itself when X is exactly representable at rank r, so the first
  // iterate already certifies lo and the search finishes in one run.
  {
    ApConfig acfg = cfg;
    acfg.eps = lo;
    acfg.seed = derive_seed(cfg.seed, 0x10000, 0);
    acfg.init = ApInit::GaussianProduct;
    acfg.warm_start.reset();
    ApRun run = ap_run(x, r, acfg);
    const bool ok = run.report.feasible;
    est.probes.push_back({lo, std::move(run.report)});
    if (ok) {
      est.certificate = std::move(run.y);
      est.certificate_error = est.probes.back().report.final_error;
      est.eps_plus = std::max(est.certificate_error, lo);
      est.eps_minus = std::min(lo, est.eps_plus);
      return est;
    }
  }

  bool have_ap_cert = false;
  std::size_t probe_idx = 0;

  auto probe = [&](double eps) {
    ApReport best;
    best.final_error = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < restarts; ++a) {
      ApConfig acfg = cfg;
      acfg.eps = eps;
      acfg.seed = derive_seed(cfg.seed, probe_idx, a);
      if (a == 0 && have_ap_cert) {
        acfg.init = ApInit::WarmStart;
        acfg.warm_start = est.certificate;
      } else {
        acfg.init = ApInit::GaussianProduct;
        acfg.warm_start.reset();
      }
      ApRun run = ap_run(x, r, acfg);
      if (run.report.feasible) {
        est.probes.push_back({eps, std::move(run.report)});
        const double err = est.probes.back().report.final_error;
        if (!have_ap_cert || err < est.certificate_error) {
          est.certificate = std::move(run.y);
          est.certificate_error = err;
          have_ap_cert = true;
        }
        ++probe_idx;
        return true;
      }
      if (run.report.final_error < best.final_error) best = std::move(run.report);
    }
    est.probes.push_back({eps, std::move(best)});
    ++probe_idx;
    return false;
  };

  // The zero matrix certifies the whole-ball radius, so a bracket that ends
  // at max_norm(X) starts out feasible for free.
  if (hi >= mx / (1.0 + cfg.feas_tol)) {
    est.eps_plus = hi;
  } else if (probe(hi)) {
    est.eps_plus = hi;
  } else {
    est.eps_minus = hi;
    lo = hi;
    hi = mx;
    est.eps_plus = mx;
  }

  while (hi - lo > bs_tol * mx) {
    const double mid = 0.5 * (lo + hi);
    if (probe(mid)) {
      hi = mid;
      est.eps_plus = mid;
    } else {
      lo = mid;
      est.eps_minus = mid;
    }
  }

  // A run can land below the radius it probed; the certificate then bounds
  // the distance more tightly than the bisection grid does.
  if (est.certificate_error < est.eps_plus) {
    est.eps_plus = est.certificate_error;
    if (est.eps_minus > est.eps_plus) {
      double em = 0.0;
      for (const Probe& p : est.probes)
        if (!p.report.feasible && p.eps < est.eps_plus) em = std::max(em, p.eps);
      est.eps_minus = em;
    }
  }
  return est;
}

}  // namespace maxlra
