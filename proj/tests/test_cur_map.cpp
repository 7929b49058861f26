#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "curtangent/cur_map.hpp"
#include "curtangent/dense_core.hpp"
#include "curtangent/experiment.hpp"
#include "curtangent/perturb.hpp"
#include "curtangent/tangent.hpp"

using namespace curtangent;

namespace {

TestProblem standard_problem(std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.seed = seed;
  return build_test_problem(cfg);
}

}  // namespace

TEST_CASE("cur recovers the rank-one example exactly") {
  const Matrix M = Matrix::Constant(3, 3, 1.0 / 3.0);
  const auto sel = make_selection({0}, {0}, 3, 3);
  CHECK((cur(M, sel) - M).norm() <= 1e-14);
}

TEST_CASE("cur with a zero intersection returns zero") {
  Matrix A = Matrix::Ones(3, 3);
  A.row(0).setZero();
  A.col(0).setZero();
  const auto sel = make_selection({0}, {0}, 3, 3);
  CHECK(cur(A, sel).norm() == 0.0);
}

TEST_CASE("cur with full selection is the identity on full-rank input") {
  const Matrix A = gaussian_matrix(6, 6, 3);
  std::vector<int> all(6);
  std::iota(all.begin(), all.end(), 0);
  const auto sel = make_selection(all, all, 6, 6);
  // W = A, so the map is A A^+ A = A
  CHECK((cur(A, sel) - A).norm() <= 1e-12 * A.norm());
}

TEST_CASE("cur dimension mismatch") {
  CHECK_THROWS_AS(cur(Matrix::Ones(3, 3), make_selection({0}, {0}, 4, 3)),
                  InvalidInput);
  CHECK_THROWS_AS(
      cur_rank_truncated(Matrix::Ones(3, 3), make_selection({0}, {0}, 3, 3), 2),
      InvalidInput);
}

TEST_CASE("rank-truncated cur removes the invisible spike for any epsilon") {
  const Matrix M = Matrix::Constant(3, 3, 1.0 / 3.0);
  const auto sel = make_selection({0}, {0}, 3, 3);
  Matrix E = Matrix::Zero(3, 3);
  E(2, 2) = 1.0;
  for (double eps : {1e-6, 2.0 / 3.0, 10.0, 1e4}) {
    CHECK((cur_rank_truncated(M + eps * E, sel, 1) - M).norm() <= 1e-14);
  }
}

TEST_CASE("rank-truncated cur agrees with cur at an admissible base point") {
  const TestProblem prob = standard_problem(17);
  const Matrix via_cur = cur(prob.M, prob.sel);
  const Matrix via_trunc = cur_rank_truncated(prob.M, prob.sel, 5);
  CHECK((via_cur - via_trunc).norm() <= 1e-11 * prob.M.norm());
  CHECK((via_trunc - prob.M).norm() <= 1e-11 * prob.M.norm());
}

TEST_CASE("exactness property over random admissible instances") {
  for (int i = 0; i < 100; ++i) {
    const TestProblem prob = standard_problem(40000 + 100 * i);
    const double rel =
        (cur_rank_truncated(prob.M, prob.sel, 5) - prob.M).norm() /
        prob.M.norm();
    CAPTURE(i);
    CHECK(rel <= 1e-11);
  }
}

TEST_CASE("first-order behavior under a small generic perturbation") {
  const TestProblem prob = standard_problem(23);
  const Matrix E = generic_perturbation(80, 70, 99);
  const double eps = 1e-6;
  const double err =
      (cur_rank_truncated(prob.M + eps * E, prob.sel, 5) - prob.M).norm();
  const double first = eps * oblique_tangent_project(prob.tp, E).norm();
  CHECK(err >= 0.5 * first);
  CHECK(err <= 2.0 * first);
}

TEST_CASE("interpolation structure of the output factors") {
  const TestProblem prob = standard_problem(31);
  const Matrix A = prob.M + 1e-3 * generic_perturbation(80, 70, 77);
  const Matrix phi = cur_rank_truncated(A, prob.sel, 5);
  // rows of the output are combinations of the selected rows S^T A ...
  const Matrix R = select_rows(A, prob.sel);
  const Matrix row_proj = pinv(R) * R;  // n x n
  CHECK((phi - phi * row_proj).norm() <= 1e-10 * phi.norm());
  // ... and columns are combinations of the selected columns A P
  const Matrix C = select_cols(A, prob.sel);
  const Matrix col_proj = C * pinv(C);  // m x m
  CHECK((phi - col_proj * phi).norm() <= 1e-10 * phi.norm());
}

TEST_CASE("perturbations annihilated by both factors leave the output at M") {
  const TestProblem prob = standard_problem(47);
  const Matrix E = invisible_perturbation(prob.sel, 11);
  for (double eps : {1e-8, 1e-3, 1.0}) {
    const Matrix A = prob.M + eps * E;
    CHECK((cur_rank_truncated(A, prob.sel, 5) - prob.M).norm() <=
          1e-12 * prob.M.norm());
  }
}
