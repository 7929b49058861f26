#include "curtangent/tangent.hpp"

#include "curtangent/dense_core.hpp"

namespace curtangent {

namespace {

void check_dims(const CompactSVD& svd, const Matrix& Z, const char* who) {
  if (Z.rows() != svd.rows() || Z.cols() != svd.cols()) {
    throw InvalidInput(std::string(who) + ": dimension mismatch");
  }
}

}  // namespace

TangentPoint make_tangent_point(const CompactSVD& svd, const SelectionPair& sel,
                                double tol) {
  if (!is_admissible(svd, sel, tol)) {
    throw AdmissibilityError("make_tangent_point: selection is not admissible");
  }
  const int r = svd.rank();
  Matrix SU(sel.s(), r);
  for (int i = 0; i < sel.s(); ++i) SU.row(i) = svd.left.row(sel.row_indices[i]);
  Matrix VP(r, sel.c());
  for (int j = 0; j < sel.c(); ++j) {
    VP.col(j) = svd.right.row(sel.col_indices[j]).transpose();
  }

  // Pi_U = U (S^T U)^+ S^T: scatter the columns of U (S^T U)^+ into the
  // selected row coordinates.
  const Matrix u_pinv_su = svd.left * pinv(SU, 1e-10);  // m x s
  Matrix pi_u = Matrix::Zero(sel.m, sel.m);
  for (int i = 0; i < sel.s(); ++i) pi_u.col(sel.row_indices[i]) = u_pinv_su.col(i);

  // Pi_V = P (V^T P)^+ V^T
  const Matrix pinv_vp_vt = pinv(VP, 1e-10) * svd.right.transpose();  // c x n
  Matrix pi_v = Matrix::Zero(sel.n, sel.n);
  for (int j = 0; j < sel.c(); ++j) pi_v.row(sel.col_indices[j]) = pinv_vp_vt.row(j);

  return TangentPoint{svd, sel, std::move(pi_u), std::move(pi_v)};
}

Matrix orthogonal_tangent_project(const CompactSVD& svd, const Matrix& Z) {
  check_dims(svd, Z, "orthogonal_tangent_project");
  const Matrix UtZ = svd.left.transpose() * Z;        // r x n
  const Matrix ZV = Z * svd.right;                    // m x r
  const Matrix UtZV = UtZ * svd.right;                // r x r
  return svd.left * UtZ + ZV * svd.right.transpose() -
         svd.left * (UtZV * svd.right.transpose());
}

Matrix normal_project(const CompactSVD& svd, const Matrix& Z) {
  check_dims(svd, Z, "normal_project");
  const Matrix left = Z - svd.left * (svd.left.transpose() * Z);
  return left - (left * svd.right) * svd.right.transpose();
}

Matrix oblique_tangent_project(const TangentPoint& tp, const Matrix& E) {
  check_dims(tp.svd, E, "oblique_tangent_project");
  const Matrix piuE = tp.pi_u * E;
  return piuE + (E - piuE) * tp.pi_v;
}

Obliqueness obliqueness(const TangentPoint& tp) {
  const Matrix pu = tp.svd.left * tp.svd.left.transpose();
  const Matrix pv = tp.svd.right * tp.svd.right.transpose();
  return Obliqueness{spectral_norm(tp.pi_u - pu), spectral_norm(tp.pi_v - pv),
                     spectral_norm(tp.pi_v)};
}

ComparisonGap comparison_gap(const TangentPoint& tp, const Matrix& E) {
  check_dims(tp.svd, E, "comparison_gap");
  const Matrix diff =
      oblique_tangent_project(tp, E) - orthogonal_tangent_project(tp.svd, E);
  const Obliqueness ob = obliqueness(tp);
  const double rhs =
      (ob.delta_u * (1.0 + ob.norm_pi_v) + 2.0 * ob.delta_v) * spectral_norm(E);
  return ComparisonGap{spectral_norm(diff), rhs};
}

}  // namespace curtangent
