#include "maxlra/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "maxlra/errors.hpp"

namespace maxlra {

namespace {

double dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace

DenseMatrix LowRankFactors::reconstruct() const {
  DenseMatrix us(U.rows(), U.cols());
  for (std::size_t i = 0; i < U.rows(); ++i) {
    for (std::size_t j = 0; j < U.cols(); ++j) us(i, j) = U(i, j) * s[j];
  }
  return matmul_a_bt(us, V);
}

LowRankFactors LowRankFactors::truncated(std::size_t r) const {
  require(r >= 1 && r <= rank(), ErrorCode::InvalidRank,
          "truncated: rank out of range");
  LowRankFactors f;
  f.U = DenseMatrix(U.rows(), r);
  f.V = DenseMatrix(V.rows(), r);
  f.s.assign(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(r));
  for (std::size_t i = 0; i < U.rows(); ++i)
    for (std::size_t j = 0; j < r; ++j) f.U(i, j) = U(i, j);
  for (std::size_t i = 0; i < V.rows(); ++i)
    for (std::size_t j = 0; j < r; ++j) f.V(i, j) = V(i, j);
  return f;
}

double max_norm(const DenseMatrix& a) {
  require(!a.empty(), ErrorCode::EmptyInput, "max_norm: empty matrix");
  double best = 0.0;
  for (double v : a.values()) best = std::max(best, std::abs(v));
  return best;
}

double fro_norm(const DenseMatrix& a) {
  require(!a.empty(), ErrorCode::EmptyInput, "fro_norm: empty matrix");
  double acc = 0.0;
  for (double v : a.values()) acc += v * v;
  return std::sqrt(acc);
}

namespace detail {

QrThin householder_qr(const DenseMatrix& a) {
  const std::size_t m = a.rows(), k = a.cols();
  require(m >= k, ErrorCode::ShapeMismatch, "qr: expects rows >= cols");

  // Work on the transpose so every column of A is a contiguous row here.
  DenseMatrix at = transpose(a);
  DenseMatrix vs(k, m);  // reflector j lives in row j, entries [j, m)
  std::vector<bool> has_v(k, false);

  for (std::size_t j = 0; j < k; ++j) {
    double* x = at.row(j) + j;
    const std::size_t len = m - j;
    const double norm_x = std::sqrt(dot(x, x, len));
    if (norm_x == 0.0) continue;  // degenerate column: no reflector

    const double alpha = x[0] >= 0.0 ? -norm_x : norm_x;
    double* v = vs.row(j) + j;
    v[0] = x[0] - alpha;
    for (std::size_t i = 1; i < len; ++i) v[i] = x[i];
    const double vnorm = std::sqrt(dot(v, v, len));
    for (std::size_t i = 0; i < len; ++i) v[i] /= vnorm;
    has_v[j] = true;

    x[0] = alpha;
    for (std::size_t i = 1; i < len; ++i) x[i] = 0.0;
    for (std::size_t c = j + 1; c < k; ++c) {
      double* row = at.row(c) + j;
      const double d = 2.0 * dot(v, row, len);
      for (std::size_t i = 0; i < len; ++i) row[i] -= d * v[i];
    }
  }

  QrThin out;
  out.R = DenseMatrix(k, k);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t i = 0; i <= c; ++i) out.R(i, c) = at(c, i);

  // Accumulate the thin Q, again with columns stored as contiguous rows.
  DenseMatrix qt(k, m);
  for (std::size_t c = 0; c < k; ++c) qt(c, c) = 1.0;
  for (std::size_t j = k; j-- > 0;) {
    if (!has_v[j]) continue;
    const double* v = vs.row(j) + j;
    const std::size_t len = m - j;
    for (std::size_t c = 0; c < k; ++c) {
      double* seg = qt.row(c) + j;
      const double d = 2.0 * dot(v, seg, len);
      for (std::size_t i = 0; i < len; ++i) seg[i] -= d * v[i];
    }
  }

  // Normalize signs so the diagonal of R is nonnegative.
  for (std::size_t j = 0; j < k; ++j) {
    if (out.R(j, j) < 0.0) {
      for (std::size_t c = j; c < k; ++c) out.R(j, c) = -out.R(j, c);
      double* qj = qt.row(j);
      for (std::size_t i = 0; i < m; ++i) qj[i] = -qj[i];
    }
  }

  out.Q = transpose(qt);
  return out;
}

}  // namespace detail

QrThin qr_thin(const DenseMatrix& a) {
  QrThin f = detail::householder_qr(a);
  const double scale = fro_norm(a);
  for (std::size_t j = 0; j < f.R.cols(); ++j) {
    require(scale > 0.0 && f.R(j, j) > 1e-12 * scale, ErrorCode::RankDeficient,
            "qr_thin: numerically rank-deficient input");
  }
  return f;
}

namespace {

// Replace unfilled columns of u with canonical basis vectors orthogonalized
// against everything already present. Deterministic by construction.
void complete_orthonormal(DenseMatrix& u, std::vector<bool>& filled) {
  const std::size_t m = u.rows(), n = u.cols();
  std::size_t cand = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (filled[j]) continue;
    while (cand < m) {
      std::vector<double> v(m, 0.0);
      v[cand] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t f = 0; f < n; ++f) {
          if (!filled[f]) continue;
          double proj = 0.0;
          for (std::size_t i = 0; i < m; ++i) proj += u(i, f) * v[i];
          for (std::size_t i = 0; i < m; ++i) v[i] -= proj * u(i, f);
        }
      }
      const double nv = std::sqrt(dot(v.data(), v.data(), m));
      ++cand;
      if (nv > 0.5) {
        for (std::size_t i = 0; i < m; ++i) u(i, j) = v[i] / nv;
        filled[j] = true;
        break;
      }
    }
    require(filled[j], ErrorCode::NoConvergence,
            "svd: failed to complete an orthonormal basis");
  }
}

}  // namespace

LowRankFactors svd_dense(const DenseMatrix& a) {
  if (a.cols() > a.rows()) {
    LowRankFactors f = svd_dense(transpose(a));
    std::swap(f.U, f.V);
    return f;
  }
  const std::size_t m = a.rows(), n = a.cols();

  // One-sided Jacobi: rotate pairs of columns of A until they are mutually
  // orthogonal. Columns live as contiguous rows of the transposed copy.
  DenseMatrix wt = transpose(a);
  DenseMatrix vt(n, n);
  for (std::size_t j = 0; j < n; ++j) vt(j, j) = 1.0;

  const double tol = 1e-13;
  const std::size_t max_sweeps = 64;
  std::vector<double> colsq(n);
  bool converged = false;

  for (std::size_t sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (std::size_t j = 0; j < n; ++j)
      colsq[j] = dot(wt.row(j), wt.row(j), m);
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = colsq[p], beta = colsq[q];
        if (alpha == 0.0 || beta == 0.0) continue;
        const double gamma = dot(wt.row(p), wt.row(q), m);
        if (std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;

        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t =
            (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;

        double* wp = wt.row(p);
        double* wq = wt.row(q);
        for (std::size_t i = 0; i < m; ++i) {
          const double xp = wp[i], xq = wq[i];
          wp[i] = c * xp - s * xq;
          wq[i] = s * xp + c * xq;
        }
        double* vp = vt.row(p);
        double* vq = vt.row(q);
        for (std::size_t i = 0; i < n; ++i) {
          const double xp = vp[i], xq = vq[i];
          vp[i] = c * xp - s * xq;
          vq[i] = s * xp + c * xq;
        }
        colsq[p] = c * c * alpha - 2.0 * c * s * gamma + s * s * beta;
        colsq[q] = s * s * alpha + 2.0 * c * s * gamma + c * c * beta;
        rotated = true;
      }
    }
    if (!rotated) converged = true;
  }
  require(converged, ErrorCode::NoConvergence, "svd_dense: sweep cap exceeded");

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j)
    sigma[j] = std::sqrt(dot(wt.row(j), wt.row(j), m));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

  LowRankFactors f;
  f.U = DenseMatrix(m, n);
  f.V = DenseMatrix(n, n);
  f.s.resize(n);
  std::vector<bool> filled(n, false);
  for (std::size_t idx = 0; idx < n; ++idx) {
    const std::size_t j = order[idx];
    f.s[idx] = sigma[j];
    for (std::size_t i = 0; i < n; ++i) f.V(i, idx) = vt(j, i);
    if (sigma[j] > 0.0) {
      const double* wj = wt.row(j);
      for (std::size_t i = 0; i < m; ++i) f.U(i, idx) = wj[i] / sigma[j];
      filled[idx] = true;
    }
  }
  complete_orthonormal(f.U, filled);
  return f;
}

LowRankFactors rsvd_truncate(const DenseMatrix& a, std::size_t r,
                             std::size_t oversample, std::size_t power_iters,
                             Rng& rng) {
  const std::size_t mindim = std::min(a.rows(), a.cols());
  require(r >= 1 && r <= mindim, ErrorCode::InvalidRank,
          "rsvd_truncate: rank out of range");
  const std::size_t l = std::min(r + oversample, mindim);

  DenseMatrix omega = gaussian_matrix(a.cols(), l, rng);
  DenseMatrix q = detail::householder_qr(matmul(a, omega)).Q;
  for (std::size_t t = 0; t < power_iters; ++t) {
    DenseMatrix qz = detail::householder_qr(matmul_at_b(a, q)).Q;
    q = detail::householder_qr(matmul(a, qz)).Q;
  }

  LowRankFactors f = svd_dense(matmul_at_b(q, a));
  if (r < f.rank()) f = f.truncated(r);
  LowRankFactors out;
  out.U = matmul(q, f.U);
  out.s = std::move(f.s);
  out.V = std::move(f.V);
  return out;
}

SpectralEstimate spectral_norm_detail(const DenseMatrix& a, double tol,
                                      std::size_t max_iter, std::uint64_t seed) {
  require(tol > 0.0, ErrorCode::InvalidArgument, "spectral_norm: tol must be > 0");
  if (std::min(a.rows(), a.cols()) <= 64) {
    LowRankFactors f = svd_dense(a);
    return {f.s.front(), true, 0};
  }
  const std::size_t m = a.rows(), n = a.cols();
  if (fro_norm(a) == 0.0) return {0.0, true, 0};

  Rng rng(seed);
  std::vector<double> v(n), w(m), u(n);
  for (auto& x : v) x = rng.normal();
  double nv = std::sqrt(dot(v.data(), v.data(), n));
  for (auto& x : v) x /= nv;

  double sigma = 0.0, prev = 0.0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    for (std::size_t i = 0; i < m; ++i) w[i] = dot(a.row(i), v.data(), n);
    std::fill(u.begin(), u.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i)
      if (w[i] != 0.0) axpy(w[i], a.row(i), u.data(), n);
    sigma = std::sqrt(dot(w.data(), w.data(), m));

    const double un = std::sqrt(dot(u.data(), u.data(), n));
    if (un == 0.0) {
      // Landed in the null space; restart from a fresh direction.
      for (auto& x : v) x = rng.normal();
      nv = std::sqrt(dot(v.data(), v.data(), n));
      for (auto& x : v) x /= nv;
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = u[i] / un;
    if (std::abs(sigma - prev) <= tol * std::max(sigma, 1e-300))
      return {sigma, true, it};
    prev = sigma;
  }
  return {sigma, false, max_iter};
}

double spectral_norm(const DenseMatrix& a, double tol) {
  return spectral_norm_detail(a, tol, 5000).value;
}

DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  DenseMatrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    double* gi = g.row(i);
    for (std::size_t j = 0; j < cols; ++j) gi[j] = rng.normal();
  }
  return g;
}

DenseMatrix rademacher_matrix(std::size_t rows, std::size_t cols, Rng& rng,
                              double scale) {
  DenseMatrix g(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    double* gi = g.row(i);
    for (std::size_t j = 0; j < cols; ++j) gi[j] = scale * rng.rademacher();
  }
  return g;
}

LowRankFactors factors_from_product(const DenseMatrix& l, const DenseMatrix& r,
                                    double drop_tol) {
  require(l.cols() == r.cols(), ErrorCode::ShapeMismatch,
          "factors_from_product: factor widths differ");
  QrThin ql = detail::householder_qr(l);
  QrThin qr = detail::householder_qr(r);
  LowRankFactors mid = svd_dense(matmul_a_bt(ql.R, qr.R));

  std::size_t cnt = mid.rank();
  if (drop_tol >= 0.0 && mid.s.front() > 0.0) {
    cnt = 0;
    while (cnt < mid.rank() && mid.s[cnt] > drop_tol * mid.s.front()) ++cnt;
  }
  if (cnt == 0) cnt = 1;
  if (cnt < mid.rank()) mid = mid.truncated(cnt);

  LowRankFactors out;
  out.U = matmul(ql.Q, mid.U);
  out.V = matmul(qr.Q, mid.V);
  out.s = mid.s;
  return out;
}

}  // namespace maxlra
