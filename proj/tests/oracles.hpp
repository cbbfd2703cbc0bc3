#pragma once

// Reference implementations used only by tests. They share no code with the
// library paths they check: eigenvalues come from a cyclic Jacobi sweep on
// the Gram matrix, random draws come from std::mt19937_64, and the tiny 2x2
// distance is found by direct search over rank-1 parameters.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "maxlra/dense.hpp"

namespace oracle {

// Eigenvalues of a symmetric matrix by cyclic Jacobi, sorted descending.
inline std::vector<double> symmetric_eigenvalues(maxlra::DenseMatrix a) {
  const std::size_t n = a.rows();
  double scale = 0.0;
  for (double v : a.values()) scale += v * v;
  scale = std::sqrt(scale);
  for (std::size_t sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (std::sqrt(off) <= 1e-14 * (scale > 0.0 ? scale : 1.0)) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

// Singular values via the eigenvalues of the smaller Gram matrix.
inline std::vector<double> singular_values(const maxlra::DenseMatrix& a) {
  const bool tall = a.rows() >= a.cols();
  const maxlra::DenseMatrix g =
      tall ? maxlra::matmul_at_b(a, a) : maxlra::matmul_a_bt(a, a);
  std::vector<double> ev = symmetric_eigenvalues(g);
  for (double& v : ev) v = std::sqrt(std::max(v, 0.0));
  return ev;
}

inline double least_squares_slope(std::span<const double> x,
                                  std::span<const double> y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

inline double pearson(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

inline double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Smallest max-norm error of a rank-1 approximant of I2, by a dense grid
// over (angle, angle, scale) followed by shrinking coordinate steps. The
// searched family sigma*u(alpha)*v(beta)^T covers every rank-1 2x2 matrix.
inline double identity2_rank1_distance() {
  const auto error_at = [](double alpha, double beta, double sigma) {
    const double u0 = std::cos(alpha), u1 = std::sin(alpha);
    const double v0 = std::cos(beta), v1 = std::sin(beta);
    const double e00 = 1.0 - sigma * u0 * v0;
    const double e01 = 0.0 - sigma * u0 * v1;
    const double e10 = 0.0 - sigma * u1 * v0;
    const double e11 = 1.0 - sigma * u1 * v1;
    return std::max(std::max(std::abs(e00), std::abs(e01)),
                    std::max(std::abs(e10), std::abs(e11)));
  };
  const double pi = std::acos(-1.0);
  double best = 1.0, ba = 0.0, bb = 0.0, bs = 0.0;
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 64; ++j) {
      for (int k = 0; k <= 40; ++k) {
        const double a = pi * i / 64.0;
        const double b = pi * j / 64.0;
        const double s = 2.0 * k / 40.0;
        const double e = error_at(a, b, s);
        if (e < best) {
          best = e;
          ba = a;
          bb = b;
          bs = s;
        }
      }
    }
  }
  double step = 0.1;
  while (step > 1e-8) {
    bool improved = false;
    const double deltas[2] = {step, -step};
    for (double d : deltas) {
      if (double e = error_at(ba + d, bb, bs); e < best) {
        best = e;
        ba += d;
        improved = true;
      }
      if (double e = error_at(ba, bb + d, bs); e < best) {
        best = e;
        bb += d;
        improved = true;
      }
      if (double e = error_at(ba, bb, bs + d); e < best) {
        best = e;
        bs += d;
        improved = true;
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

// Exact rank-r n x n matrix from two Gaussian factors, independent of the
// library generator.
inline maxlra::DenseMatrix random_low_rank(std::size_t n, std::size_t r,
                                           std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  maxlra::DenseMatrix l(n, r), rt(n, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) l(i, j) = dist(gen);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) rt(i, j) = dist(gen);
  return maxlra::matmul_a_bt(l, rt);
}

// Largest magnitude entry of Q^T Q - I.
inline double gram_residual(const maxlra::DenseMatrix& q) {
  const maxlra::DenseMatrix g = maxlra::matmul_at_b(q, q);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) {
      const double target = (i == j) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(g(i, j) - target));
    }
  return worst;
}

}  // namespace oracle
