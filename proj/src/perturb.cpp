#include "curtangent/perturb.hpp"

#include "curtangent/dense_core.hpp"

namespace curtangent {

namespace {

// Zeroes the selected rows and columns in place.
void zero_selected(Matrix& G, const SelectionPair& sel) {
  for (int i : sel.row_indices) G.row(i).setZero();
  for (int j : sel.col_indices) G.col(j).setZero();
}

}  // namespace

Matrix generic_perturbation(int m, int n, std::uint64_t seed) {
  Matrix G = gaussian_matrix(m, n, seed);
  return G / G.norm();
}

Matrix invisible_perturbation(const SelectionPair& sel, std::uint64_t seed) {
  if (sel.s() >= sel.m || sel.c() >= sel.n) {
    throw DegenerateInput(
        "invisible_perturbation: full selection leaves no invisible block");
  }
  Matrix E = gaussian_matrix(sel.m, sel.n, seed);
  zero_selected(E, sel);
  const double norm = E.norm();
  if (norm == 0.0) {
    throw DegenerateInput("invisible_perturbation: invisible block is zero");
  }
  return E / norm;
}

Matrix normal_perturbation(const CompactSVD& svd, std::uint64_t seed) {
  const int m = svd.rows();
  const int n = svd.cols();
  if (svd.rank() >= std::min(m, n)) {
    throw DegenerateInput("normal_perturbation: normal space is trivial");
  }
  const Matrix G = gaussian_matrix(m, n, seed);
  Matrix E = G - svd.left * (svd.left.transpose() * G);
  E -= (E * svd.right) * svd.right.transpose();
  const double norm = E.norm();
  if (norm == 0.0) {
    throw DegenerateInput("normal_perturbation: normal component is zero");
  }
  return E / norm;
}

Matrix visible_perturbation(const SelectionPair& sel, double alpha,
                            std::uint64_t seed) {
  if (!(alpha > 0.0)) {
    throw InvalidInput("visible_perturbation: alpha must be > 0");
  }
  const Matrix G = gaussian_matrix(sel.m, sel.n, seed);
  Matrix E_inv = G;
  zero_selected(E_inv, sel);
  const Matrix E_vis = G - E_inv;
  const double inv_norm = E_inv.norm();
  const double vis_norm = E_vis.norm();
  if (inv_norm == 0.0 || vis_norm == 0.0) {
    throw DegenerateInput("visible_perturbation: zero component");
  }
  Matrix E = E_inv / inv_norm + alpha * (E_vis / vis_norm);
  return E / E.norm();
}

Matrix make_perturbation(const PerturbationSpec& spec, const SelectionPair& sel,
                         const CompactSVD& svd) {
  switch (spec.family) {
    case PerturbationFamily::generic:
      return generic_perturbation(sel.m, sel.n, spec.seed);
    case PerturbationFamily::invisible:
      return invisible_perturbation(sel, spec.seed);
    case PerturbationFamily::normal:
      return normal_perturbation(svd, spec.seed);
    case PerturbationFamily::visible:
      return visible_perturbation(sel, spec.alpha, spec.seed);
  }
  throw InvalidInput("make_perturbation: unknown family");
}

}  // namespace curtangent
