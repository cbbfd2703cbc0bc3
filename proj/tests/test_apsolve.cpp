#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <vector>

#include "maxlra/apsolve.hpp"
#include "maxlra/errors.hpp"
#include "maxlra/genmat.hpp"
#include "maxlra/linalg.hpp"
#include "maxlra/rng.hpp"
#include "oracles.hpp"

using maxlra::ApConfig;
using maxlra::DenseMatrix;
using maxlra::Rng;

namespace {

ApConfig seeded(std::uint64_t seed) {
  ApConfig cfg;
  cfg.seed = seed;
  return cfg;
}

bool entrywise_equal(const DenseMatrix& a, const DenseMatrix& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.data()[i] != b.data()[i]) return false;
  return true;
}

}  // namespace

TEST_CASE("ball projection basics") {
  DenseMatrix x(1, 2, {0.0, 0.0});
  DenseMatrix y(1, 2, {3.0, -0.5});
  const DenseMatrix z = maxlra::project_ball(y, x, 1.0);
  CHECK(z(0, 0) == 1.0);
  CHECK(z(0, 1) == -0.5);

  // Radius zero collapses onto the center.
  const DenseMatrix z0 = maxlra::project_ball(y, x, 0.0);
  CHECK(entrywise_equal(z0, x));

  // A point already inside is untouched.
  const DenseMatrix z1 = maxlra::project_ball(z, x, 1.0);
  CHECK(entrywise_equal(z1, z));

  CHECK_THROWS_AS((void)maxlra::project_ball(y, DenseMatrix::identity(3), 1.0),
                  maxlra::Error);
  CHECK_THROWS_AS((void)maxlra::project_ball(y, x, -0.1), maxlra::Error);
}

TEST_CASE("ball projection is exact, idempotent, nonexpansive") {
  Rng rng(42);
  for (int rep = 0; rep < 200; ++rep) {
    Rng sub = rng.substream(std::uint64_t(rep));
    const DenseMatrix x = maxlra::gaussian_matrix(7, 5, sub);
    const DenseMatrix y = maxlra::gaussian_matrix(7, 5, sub);
    const double eps = 2.0 * sub.uniform01();
    const DenseMatrix z = maxlra::project_ball(y, x, eps);
    REQUIRE(maxlra::max_norm(z - x) <= eps);
    REQUIRE(entrywise_equal(maxlra::project_ball(z, x, eps), z));
    REQUIRE(maxlra::fro_norm(z - x) <= maxlra::fro_norm(y - x) + 1e-12);
  }
}

TEST_CASE("rank projection matches hard truncation") {
  DenseMatrix d(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = 2.0;
  d(2, 2) = 1.0;
  const maxlra::LowRankFactors f = maxlra::project_rank(d, 2, seeded(5));
  const DenseMatrix y = f.reconstruct();
  CHECK(y(0, 0) == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(y(1, 1) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(std::abs(y(2, 2)) < 1e-10);
  CHECK(f.rank() <= 2);
}

TEST_CASE("rank projection captures exact-rank inputs") {
  const DenseMatrix x = oracle::random_low_rank(30, 6, 13);
  const maxlra::LowRankFactors f = maxlra::project_rank(x, 6, seeded(2));
  CHECK(maxlra::max_norm(x - f.reconstruct()) <
        1e-8 * maxlra::spectral_norm(x));

  CHECK_THROWS_AS((void)maxlra::project_rank(x, 0, seeded(2)), maxlra::Error);
  CHECK_THROWS_AS((void)maxlra::project_rank(x, 31, seeded(2)), maxlra::Error);
}

TEST_CASE("rank projection is near optimal in frobenius norm") {
  Rng rng(77);
  const DenseMatrix a = maxlra::uniform_matrix(200, rng);
  const std::size_t r = 20;
  const maxlra::LowRankFactors f = maxlra::project_rank(a, r, seeded(3));
  const maxlra::LowRankFactors svd = maxlra::svd_dense(a);
  const double opt = maxlra::fro_norm(a - svd.truncated(r).reconstruct());
  const double got = maxlra::fro_norm(a - f.reconstruct());
  CHECK(got <= 1.05 * opt);
  CHECK(got >= opt * (1.0 - 1e-9));
}

TEST_CASE("alternating projections on representable inputs") {
  const DenseMatrix x = oracle::random_low_rank(24, 3, 21);
  const double mx = maxlra::max_norm(x);

  for (double eps : {0.0, 0.3 * mx}) {
    ApConfig cfg = seeded(11);
    cfg.eps = eps;
    const maxlra::ApRun run = maxlra::ap_run(x, 3, cfg);
    CHECK(run.report.feasible);
    CHECK(run.report.final_error <=
          eps * (1.0 + cfg.feas_tol) + 1e-8 * mx);
    CHECK(run.report.stop_reason == maxlra::StopReason::Converged);
  }
}

TEST_CASE("alternating projections bracket the identity threshold") {
  const DenseMatrix x = DenseMatrix::identity(2);

  ApConfig cfg = seeded(31);
  cfg.eps = 0.6;
  const maxlra::ApRun good = maxlra::ap_run(x, 1, cfg);
  CHECK(good.report.feasible);
  CHECK(good.report.final_error <= 0.6 * (1.0 + cfg.feas_tol) + 1e-12);

  cfg.eps = 0.4;
  const maxlra::ApRun bad = maxlra::ap_run(x, 1, cfg);
  CHECK_FALSE(bad.report.feasible);
  // Best rank-1 fit of I_2 cannot beat the true distance.
  CHECK(bad.report.final_error >= 0.5 - 1e-9);
}

TEST_CASE("run report internals are consistent") {
  const DenseMatrix x = oracle::random_low_rank(16, 2, 3);
  ApConfig cfg = seeded(8);
  cfg.eps = 0.1 * maxlra::max_norm(x);
  const maxlra::ApRun run = maxlra::ap_run(x, 2, cfg);
  REQUIRE(!run.report.error_history.empty());
  CHECK(run.report.final_error == run.report.error_history.back());
  CHECK(run.report.error_history.size() == run.report.iterations + 1);
  CHECK(maxlra::max_norm(x - run.y.reconstruct()) ==
        doctest::Approx(run.report.final_error).epsilon(1e-12));
  CHECK(run.y.rank() <= 2);
}

TEST_CASE("distance search certifies representable inputs at machine level") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const DenseMatrix x = oracle::random_low_rank(32, 4, 100 + seed);
    const double mx = maxlra::max_norm(x);
    const maxlra::DistanceEstimate est =
        maxlra::estimate_distance(x, 4, 0.0, -1.0, 1e-3, 2, seeded(seed));
    CHECK(est.eps_plus <= 1e-6 * mx);
    CHECK(est.certificate_error <= 1e-6 * mx);
    CHECK(est.probes.size() == 1);
  }
}

TEST_CASE("distance search matches the rank-one identity oracle") {
  const DenseMatrix x = DenseMatrix::identity(2);
  const maxlra::DistanceEstimate est =
      maxlra::estimate_distance(x, 1, 0.0, -1.0, 1e-3, 3, seeded(4));
  CHECK(est.eps_plus >= 0.499);
  CHECK(est.eps_plus <= 0.502);
  const double oracle_d = oracle::identity2_rank1_distance();
  CHECK(std::abs(est.eps_plus - oracle_d) <= 2e-3);
  CHECK(est.eps_minus < est.eps_plus);
  CHECK(est.certificate_error <=
        est.eps_plus * (1.0 + 1e-3) + 1e-9);
  CHECK(est.certificate.rank() <= 1);
}

TEST_CASE("distance decays as the target rank grows") {
  const DenseMatrix x = DenseMatrix::identity(64);
  std::vector<double> eps;
  for (std::size_t r : {2u, 4u, 8u, 16u, 32u}) {
    const maxlra::DistanceEstimate est =
        maxlra::estimate_distance(x, r, 0.0, -1.0, 2e-3, 2, seeded(6));
    eps.push_back(est.eps_plus);
    CHECK(est.eps_plus <= 1.0);
    CHECK(est.eps_minus <= est.eps_plus);
    CHECK(est.certificate.rank() <= r);
    CHECK(est.certificate_error <= est.eps_plus * (1.0 + 1e-3) + 1e-9);
  }
  for (std::size_t i = 1; i < eps.size(); ++i)
    CHECK(eps[i] <= eps[i - 1] + 4e-3);
  // Doubling the rank four times must shrink the radius substantially.
  CHECK(eps.back() < 0.6 * eps.front());
}

TEST_CASE("distance search handles degenerate inputs and brackets") {
  const DenseMatrix zero(4, 4);
  const maxlra::DistanceEstimate z =
      maxlra::estimate_distance(zero, 1, 0.0, -1.0, 1e-3, 1, seeded(1));
  CHECK(z.eps_plus == 0.0);
  CHECK(z.certificate_error == 0.0);

  const DenseMatrix x = DenseMatrix::identity(3);
  CHECK_THROWS_AS((void)maxlra::estimate_distance(x, 1, 0.5, 0.5, 1e-3, 1,
                                                  seeded(1)),
                  maxlra::Error);
  CHECK_THROWS_AS((void)maxlra::estimate_distance(x, 1, 0.7, 0.2, 1e-3, 1,
                                                  seeded(1)),
                  maxlra::Error);

  // A bracket that tops out below the distance re-expands to the whole ball.
  const maxlra::DistanceEstimate est = maxlra::estimate_distance(
      DenseMatrix::identity(2), 1, 0.0, 0.2, 1e-2, 1, seeded(9));
  CHECK(est.probes.front().eps == 0.0);
  CHECK(est.eps_minus >= 0.2);
  CHECK(est.eps_plus >= 0.49);
  CHECK(est.eps_plus <= 0.52);
}
