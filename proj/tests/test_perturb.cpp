#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "curtangent/dense_core.hpp"
#include "curtangent/experiment.hpp"
#include "curtangent/perturb.hpp"
#include "curtangent/tangent.hpp"

using namespace curtangent;

namespace {

SelectionPair standard_selection() {
  ExperimentConfig cfg;
  cfg.seed = 1;
  return build_test_problem(cfg).sel;
}

}  // namespace

TEST_CASE("generic perturbations have unit Frobenius norm and are deterministic") {
  const Matrix E = generic_perturbation(80, 70, 5);
  CHECK(E.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(E == generic_perturbation(80, 70, 5));
  CHECK(E != generic_perturbation(80, 70, 6));
}

TEST_CASE("invisible perturbations vanish bit-exactly on the selection") {
  const auto sel = standard_selection();
  const Matrix E = invisible_perturbation(sel, 7);
  CHECK(E.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(select_rows(E, sel).norm() == 0.0);
  CHECK(select_cols(E, sel).norm() == 0.0);

  // full selection leaves nothing invisible
  std::vector<int> all_r(3), all_c(3);
  std::iota(all_r.begin(), all_r.end(), 0);
  std::iota(all_c.begin(), all_c.end(), 0);
  CHECK_THROWS_AS(
      invisible_perturbation(make_selection(all_r, all_c, 3, 3), 1),
      DegenerateInput);
}

TEST_CASE("normal perturbations live in the normal space") {
  ExperimentConfig cfg;
  cfg.seed = 2;
  const TestProblem prob = build_test_problem(cfg);
  const Matrix E = normal_perturbation(prob.svd, 9);
  CHECK(E.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK((prob.svd.left.transpose() * E).norm() <= 1e-12);
  CHECK((E * prob.svd.right).norm() <= 1e-12);
  CHECK((normal_project(prob.svd, E) - E).norm() <= 1e-12);

  // a square full-rank base point has no normal space
  CompactSVD full{Matrix::Identity(3, 3), Vector::Ones(3),
                  Matrix::Identity(3, 3)};
  CHECK_THROWS_AS(normal_perturbation(full, 1), DegenerateInput);
}

TEST_CASE("visible perturbation splits one draw into orthogonal parts") {
  const auto sel = standard_selection();
  const double alpha = 0.3;
  const Matrix E = visible_perturbation(sel, alpha, 13);
  CHECK(E.norm() == doctest::Approx(1.0).epsilon(1e-14));

  // recover the two normalized parts from the construction
  const Matrix G = gaussian_matrix(sel.m, sel.n, 13);
  Matrix E_inv = G;
  for (int i : sel.row_indices) E_inv.row(i).setZero();
  for (int j : sel.col_indices) E_inv.col(j).setZero();
  const Matrix E_vis = G - E_inv;
  const Matrix inv_hat = E_inv / E_inv.norm();
  const Matrix vis_hat = E_vis / E_vis.norm();
  // the two parts are Frobenius-orthogonal by support
  CHECK(std::abs((inv_hat.array() * vis_hat.array()).sum()) <= 1e-14);
  const Matrix combo = inv_hat + alpha * vis_hat;
  CHECK((E - combo / combo.norm()).norm() <= 1e-13);
}

TEST_CASE("visible perturbation approaches the invisible one as alpha -> 0") {
  const auto sel = standard_selection();
  for (double alpha : {1e-3, 1e-2, 1e-1}) {
    const Matrix E = visible_perturbation(sel, alpha, 21);
    const Matrix base = visible_perturbation(sel, 1e-12, 21);
    CHECK((E - base).norm() <= 2.0 * alpha);
  }
  CHECK_THROWS_AS(visible_perturbation(sel, 0.0, 1), InvalidInput);
  CHECK_THROWS_AS(visible_perturbation(sel, -1.0, 1), InvalidInput);
}

TEST_CASE("make_perturbation dispatches on the family tag") {
  ExperimentConfig cfg;
  cfg.seed = 4;
  const TestProblem prob = build_test_problem(cfg);

  PerturbationSpec spec;
  spec.seed = 17;
  spec.family = PerturbationFamily::generic;
  CHECK(make_perturbation(spec, prob.sel, prob.svd) ==
        generic_perturbation(80, 70, 17));
  spec.family = PerturbationFamily::invisible;
  CHECK(make_perturbation(spec, prob.sel, prob.svd) ==
        invisible_perturbation(prob.sel, 17));
  spec.family = PerturbationFamily::normal;
  CHECK(make_perturbation(spec, prob.sel, prob.svd) ==
        normal_perturbation(prob.svd, 17));
  spec.family = PerturbationFamily::visible;
  spec.alpha = 0.5;
  CHECK(make_perturbation(spec, prob.sel, prob.svd) ==
        visible_perturbation(prob.sel, 0.5, 17));
}
