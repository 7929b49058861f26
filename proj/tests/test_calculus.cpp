#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "curtangent/calculus.hpp"
#include "curtangent/cur_map.hpp"
#include "curtangent/dense_core.hpp"
#include "curtangent/experiment.hpp"
#include "curtangent/perturb.hpp"
#include "oracles.hpp"

using namespace curtangent;

namespace {

// Rank-k matrix with a controlled spectral gap, plus a tangent direction.
struct FixedRankCase {
  Matrix W;
  Matrix Wdot;
  CompactSVD svd;
};

FixedRankCase fixed_rank_case(int m, int n, int k, std::uint64_t seed) {
  FixedRankCase out;
  out.W = truncate_rank(gaussian_matrix(m, n, seed), k);
  out.svd = compact_svd(out.W);
  const Matrix Z = gaussian_matrix(m, n, seed + 1);
  out.Wdot = orthogonal_tangent_project(out.svd, Z);
  return out;
}

}  // namespace

TEST_CASE("pinv_derivative of an invertible matrix is -W^-1 H W^-1") {
  const Matrix W = Matrix::Identity(4, 4) + 0.1 * gaussian_matrix(4, 4, 2);
  const Matrix H = gaussian_matrix(4, 4, 3);
  const Matrix Winv = W.inverse();
  const Matrix expected = -Winv * H * Winv;
  CHECK((pinv_derivative(W, H) - expected).norm() <= 1e-10 * expected.norm());
}

TEST_CASE("pinv_derivative matches a finite-difference oracle on fixed-rank curves") {
  const auto c = fixed_rank_case(7, 6, 3, 11);
  const Matrix analytic = pinv_derivative(c.W, c.Wdot);
  const double t = 1e-6;
  const Matrix fd = (pinv(c.W + t * c.Wdot) - pinv(c.W - t * c.Wdot)) / (2 * t);
  CHECK((analytic - fd).norm() <= 1e-5 * analytic.norm());
}

TEST_CASE("fixed_rank_velocity_residual separates tangent from normal directions") {
  const auto c = fixed_rank_case(7, 6, 3, 13);
  CHECK(fixed_rank_velocity_residual(c.svd, c.Wdot) <= 1e-10);
  const Matrix N = normal_project(c.svd, gaussian_matrix(7, 6, 14));
  CHECK(fixed_rank_velocity_residual(c.svd, N) ==
        doctest::Approx(spectral_norm(N)).epsilon(1e-10));
}

TEST_CASE("truncation_expansion on a diagonal example") {
  Matrix W = Matrix::Zero(3, 3);
  W.diagonal() << 1.0, 0.5, 0.0;
  Matrix E = Matrix::Zero(3, 3);
  E(2, 2) = 0.05;  // purely normal direction, ||E||_2 = 0.1 * gamma
  const auto rep = truncation_expansion(W, E, 2);
  CHECK(rep.gamma == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rep.c_used == doctest::Approx(0.2));
  // (W+E)_2 = W here, and P_T E = 0, so the remainder is exactly zero
  CHECK(rep.remainder_norm <= 1e-14);
  CHECK(rep.satisfied);
  // bound = (12 - 16c)/(1 - 2c) * ||E||^2 / gamma with c = 0.2
  const double expected_bound = (12.0 - 16.0 * 0.2) / (1.0 - 2.0 * 0.2) *
                                0.05 * 0.05 / 0.5;
  CHECK(rep.bound == doctest::Approx(expected_bound).epsilon(1e-12));
}

TEST_CASE("truncation_expansion remainder matches a direct computation") {
  const auto c = fixed_rank_case(8, 8, 3, 21);
  const double gamma = c.svd.sigmas(2);
  Matrix E = gaussian_matrix(8, 8, 22);
  E *= 0.05 * gamma / spectral_norm(E);
  const auto rep = truncation_expansion(c.W, E, 3);
  const Matrix direct = truncate_rank(c.W + E, 3) - c.W -
                        orthogonal_tangent_project(c.svd, E);
  CHECK(rep.remainder_norm ==
        doctest::Approx(spectral_norm(direct)).epsilon(1e-10));
  CHECK(rep.satisfied);
  // second-order: remainder shrinks ~100x when E shrinks 10x
  const auto rep_small = truncation_expansion(c.W, 0.1 * E, 3);
  CHECK(rep_small.remainder_norm <= 0.02 * rep.remainder_norm);
}

TEST_CASE("truncation_expansion hypothesis and input validation") {
  const auto c = fixed_rank_case(6, 6, 2, 31);
  const double gamma = c.svd.sigmas(1);
  Matrix E = gaussian_matrix(6, 6, 32);
  E *= 0.5 * gamma / spectral_norm(E);  // beyond c * gamma with c = 0.2
  CHECK_THROWS_AS(truncation_expansion(c.W, E, 2), HypothesisViolation);
  CHECK_THROWS_AS(truncation_expansion(c.W, 0.01 * E, 2, 0.0), InvalidInput);
  CHECK_THROWS_AS(truncation_expansion(c.W, 0.01 * E, 2, 0.5), InvalidInput);
  // W must have rank exactly r
  CHECK_THROWS_AS(truncation_expansion(c.W, 0.01 * E, 3), InvalidInput);
}

TEST_CASE("cur_frechet_derivative matches the finite-difference oracle") {
  ExperimentConfig cfg;
  cfg.seed = 3;
  const TestProblem prob = build_test_problem(cfg);
  const Matrix E = generic_perturbation(80, 70, 200);
  const Matrix analytic = cur_frechet_derivative(prob.tp, E);
  const Matrix fd = finite_difference_derivative(
      MapKind::cur_truncated, prob.M, prob.sel, 5, E, 1e-6);
  CHECK((analytic - fd).norm() <= 1e-4 * analytic.norm());
}

TEST_CASE("svd truncation derivative equals the orthogonal tangent projection") {
  ExperimentConfig cfg;
  cfg.seed = 7;
  const TestProblem prob = build_test_problem(cfg);
  const Matrix E = generic_perturbation(80, 70, 201);
  const Matrix analytic = orthogonal_tangent_project(prob.svd, E);
  const Matrix fd = finite_difference_derivative(
      MapKind::svd_truncated, prob.M, prob.sel, 5, E, 1e-6);
  CHECK((analytic - fd).norm() <= 1e-4 * analytic.norm());
}

TEST_CASE("first-order residuals are second order in the perturbation size") {
  ExperimentConfig cfg;
  cfg.seed = 13;
  const TestProblem prob = build_test_problem(cfg);
  const Matrix E = generic_perturbation(80, 70, 210);

  const auto cur_big = cur_first_order_residual(prob.tp, 1e-3 * E);
  const auto cur_small = cur_first_order_residual(prob.tp, 1e-4 * E);
  const double cur_ratio = cur_big.residual / cur_small.residual;
  CHECK(cur_ratio > 100.0 / 3.0);
  CHECK(cur_ratio < 300.0);
  // the first-order term itself scales linearly
  CHECK(cur_big.first_order ==
        doctest::Approx(10.0 * cur_small.first_order).epsilon(1e-10));

  const auto svd_big = svd_first_order_residual(prob.svd, 1e-3 * E, 5);
  const auto svd_small = svd_first_order_residual(prob.svd, 1e-4 * E, 5);
  const double svd_ratio = svd_big.residual / svd_small.residual;
  CHECK(svd_ratio > 100.0 / 3.0);
  CHECK(svd_ratio < 300.0);
}

TEST_CASE("first-order residual hypotheses are enforced") {
  ExperimentConfig cfg;
  cfg.seed = 13;
  const TestProblem prob = build_test_problem(cfg);
  const Matrix big = prob.M;  // far too large to be a perturbation
  CHECK_THROWS_AS(cur_first_order_residual(prob.tp, big), HypothesisViolation);
  CHECK_THROWS_AS(svd_first_order_residual(prob.svd, big, 5),
                  HypothesisViolation);
}

TEST_CASE("pseudoinverse consequence residuals vanish at admissible points") {
  for (std::uint64_t seed : {1, 5, 9}) {
    ExperimentConfig cfg;
    cfg.seed = seed;
    const TestProblem prob = build_test_problem(cfg);
    const auto res = cur_pinv_consequence_check(prob.svd, prob.sel);
    CAPTURE(seed);
    CHECK(res.left_res <= 1e-10 * prob.M.norm());
    CHECK(res.right_res <= 1e-10 * prob.M.norm());
  }
}
