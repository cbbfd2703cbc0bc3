#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <vector>

#include "maxlra/dense.hpp"
#include "maxlra/errors.hpp"
#include "maxlra/genmat.hpp"
#include "maxlra/linalg.hpp"
#include "maxlra/rng.hpp"
#include "oracles.hpp"

using maxlra::DenseMatrix;
using maxlra::MatrixClass;
using maxlra::MatrixSpec;
using maxlra::Rng;

namespace {

bool identical(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.data()[i] != b.data()[i]) return false;
  return true;
}

}  // namespace

TEST_CASE("identity matrix") {
  const DenseMatrix i1 = maxlra::identity_matrix(1);
  CHECK(i1.rows() == 1);
  CHECK(i1(0, 0) == 1.0);

  const DenseMatrix i5 = maxlra::identity_matrix(5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      CHECK(i5(i, j) == (i == j ? 1.0 : 0.0));
  CHECK(maxlra::max_norm(i5) == 1.0);
  CHECK(maxlra::spectral_norm(i5) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("uniform matrix entry law") {
  Rng rng(7);
  const std::size_t n = 120;
  const DenseMatrix a = maxlra::uniform_matrix(n, rng);
  REQUIRE(a.rows() == n);
  REQUIRE(a.cols() == n);

  double mx = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(std::abs(a.data()[i]) < 1.0);
    mx = std::max(mx, std::abs(a.data()[i]));
    sum += a.data()[i];
  }
  // n^2 draws push the extreme value against the box edge.
  CHECK(mx > 0.99);
  // Mean of n^2 Uniform(-1,1) draws: sd = 1/(n*sqrt(3)).
  const double se = 1.0 / (static_cast<double>(n) * std::sqrt(3.0));
  CHECK(std::abs(sum / static_cast<double>(a.size())) < 3.0 * se);

  Rng rng2(7);
  CHECK(identical(a, maxlra::uniform_matrix(n, rng2)));
}

TEST_CASE("uniform matrix spectral scale") {
  // ||A||_2 concentrates near 2*sqrt(n/3) for i.i.d. Uniform(-1,1); the
  // window below is loose enough to hold for nearly every seed.
  const std::size_t n = 200;
  int ok = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(1000 + seed);
    const DenseMatrix a = maxlra::uniform_matrix(n, rng);
    const double ratio = maxlra::spectral_norm(a, 1e-6) / std::sqrt(double(n));
    if (ratio > 0.8 && ratio < 1.5) ++ok;
  }
  CHECK(ok >= 19);
}

TEST_CASE("banded uniform support and reproductions") {
  Rng rng(11);
  const std::size_t n = 16, b = 3;
  const DenseMatrix a = maxlra::banded_uniform(n, b, rng);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t d = i > j ? i - j : j - i;
      if (d < b) {
        CHECK(a(i, j) != 0.0);
        CHECK(std::abs(a(i, j)) < 1.0);
      } else {
        CHECK(a(i, j) == 0.0);
      }
    }

  SUBCASE("band one is diagonal") {
    Rng r2(3);
    const DenseMatrix d = maxlra::banded_uniform(8, 1, r2);
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j)
        if (i != j) CHECK(d(i, j) == 0.0);
  }

  SUBCASE("full band reproduces the unbanded draw") {
    Rng r2(99), r3(99);
    CHECK(identical(maxlra::banded_uniform(12, 12, r2),
                    maxlra::uniform_matrix(12, r3)));
  }

  SUBCASE("band bounds") {
    Rng r2(1);
    CHECK_THROWS_AS(maxlra::banded_uniform(8, 0, r2), maxlra::Error);
    CHECK_THROWS_AS(maxlra::banded_uniform(8, 9, r2), maxlra::Error);
  }
}

TEST_CASE("stiefel product rank and scale") {
  Rng rng(5);
  const std::size_t n = 24, k = 4;
  const DenseMatrix p = maxlra::stiefel_product(n, k, rng);

  // Q1 Q2^T with orthonormal factors has k unit singular values. The oracle
  // works through the Gram matrix, so its exact zeros surface near 1e-8.
  const std::vector<double> s = oracle::singular_values(p);
  for (std::size_t i = 0; i < k; ++i)
    CHECK(s[i] == doctest::Approx(1.0).epsilon(1e-10));
  for (std::size_t i = k; i < s.size(); ++i) CHECK(s[i] < 1e-7);

  SUBCASE("normalized variant has unit max norm") {
    Rng r2(5);
    const DenseMatrix q = maxlra::stiefel_product(n, k, r2, true);
    CHECK(maxlra::max_norm(q) == doctest::Approx(1.0).epsilon(1e-15));
    // Normalization rescales the same draw.
    const double scale = maxlra::max_norm(p);
    CHECK(q(0, 0) == doctest::Approx(p(0, 0) / scale).epsilon(1e-12));
  }

  SUBCASE("factor rank bounds") {
    Rng r2(1);
    CHECK_THROWS_AS(maxlra::stiefel_product(8, 0, r2), maxlra::Error);
    CHECK_THROWS_AS(maxlra::stiefel_product(8, 9, r2), maxlra::Error);
  }
}

TEST_CASE("hadamard construction") {
  const DenseMatrix h1 = maxlra::hadamard(1);
  CHECK(h1(0, 0) == 1.0);

  const DenseMatrix h2 = maxlra::hadamard(2);
  CHECK(h2(0, 0) == 1.0);
  CHECK(h2(0, 1) == 1.0);
  CHECK(h2(1, 0) == 1.0);
  CHECK(h2(1, 1) == -1.0);

  for (std::size_t n : {4u, 16u, 64u}) {
    const DenseMatrix h = maxlra::hadamard(n);
    for (std::size_t i = 0; i < h.size(); ++i)
      CHECK(std::abs(h.data()[i]) == 1.0);
    // H^T H = n I.
    const DenseMatrix g = maxlra::matmul_at_b(h, h);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        CHECK(g(i, j) == doctest::Approx(i == j ? double(n) : 0.0)
                             .epsilon(1e-12));
  }

  CHECK_THROWS_AS(maxlra::hadamard(12), maxlra::Error);
  CHECK_THROWS_AS(maxlra::hadamard(0), maxlra::Error);
}

TEST_CASE("generate dispatch") {
  MatrixSpec spec;
  spec.cls = MatrixClass::Identity;
  spec.n = 6;
  CHECK(identical(maxlra::generate(spec), maxlra::identity_matrix(6)));

  spec.cls = MatrixClass::Hadamard;
  spec.n = 8;
  CHECK(identical(maxlra::generate(spec), maxlra::hadamard(8)));

  spec.cls = MatrixClass::Uniform;
  spec.n = 10;
  spec.seed = 31;
  const DenseMatrix u = maxlra::generate(spec);
  CHECK(identical(u, maxlra::generate(spec)));
  Rng rng(31);
  CHECK(identical(u, maxlra::uniform_matrix(10, rng)));

  spec.cls = MatrixClass::Banded;
  spec.band = 2;
  const DenseMatrix b = maxlra::generate(spec);
  CHECK(b(0, 9) == 0.0);
  CHECK(identical(b, maxlra::generate(spec)));

  spec.cls = MatrixClass::StiefelProduct;
  spec.factor_rank = 3;
  spec.normalize = true;
  const DenseMatrix p = maxlra::generate(spec);
  CHECK(maxlra::max_norm(p) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(identical(p, maxlra::generate(spec)));
}

TEST_CASE("matrix class names") {
  for (MatrixClass cls :
       {MatrixClass::Identity, MatrixClass::Hadamard, MatrixClass::Uniform,
        MatrixClass::Banded, MatrixClass::StiefelProduct}) {
    CHECK(maxlra::matrix_class_from_name(maxlra::matrix_class_name(cls)) ==
          cls);
  }
  CHECK_THROWS_AS(maxlra::matrix_class_from_name("toeplitz"),
                  maxlra::Error);
}
