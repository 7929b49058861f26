#include "curtangent/calculus.hpp"

#include <cstdio>

#include "curtangent/cur_map.hpp"
#include "curtangent/dense_core.hpp"

namespace curtangent {

Matrix pinv_derivative(const Matrix& W, const Matrix& Wdot) {
  if (W.rows() != Wdot.rows() || W.cols() != Wdot.cols()) {
    throw InvalidInput("pinv_derivative: dimension mismatch");
  }
  const double sigma_max = spectral_norm(W);
  if (sigma_max == 0.0) {
    throw InvalidInput("pinv_derivative: W is rank deficient beyond tolerance");
  }
  const Matrix Wp = pinv(W, 1e-10);
  const Matrix proj_left = W * Wp;    // Q Q^T
  const Matrix proj_right = Wp * W;   // Z Z^T

  const double wd_norm = Wdot.norm();
  const Matrix normal_part =
      Wdot - proj_left * Wdot - (Wdot - proj_left * Wdot) * proj_right;
  if (wd_norm > 0.0 && normal_part.norm() > 1e-8 * wd_norm) {
    std::fprintf(stderr,
                 "pinv_derivative: warning: direction has normal component "
                 "%.3e relative to ||Wdot||\n",
                 normal_part.norm() / wd_norm);
  }

  const Matrix eye_left = Matrix::Identity(W.rows(), W.rows());
  const Matrix eye_right = Matrix::Identity(W.cols(), W.cols());
  return -Wp * Wdot * Wp +
         Wp * Wp.transpose() * Wdot.transpose() * (eye_left - proj_left) +
         (eye_right - proj_right) * Wdot.transpose() * Wp.transpose() * Wp;
}

double fixed_rank_velocity_residual(const CompactSVD& svdW,
                                    const Matrix& Wdot) {
  if (Wdot.rows() != svdW.rows() || Wdot.cols() != svdW.cols()) {
    throw InvalidInput("fixed_rank_velocity_residual: dimension mismatch");
  }
  const Matrix left = Wdot - svdW.left * (svdW.left.transpose() * Wdot);
  return spectral_norm(left - (left * svdW.right) * svdW.right.transpose());
}

ExpansionReport truncation_expansion(const Matrix& W, const Matrix& E, int r,
                                     double c_used) {
  if (W.rows() != E.rows() || W.cols() != E.cols()) {
    throw InvalidInput("truncation_expansion: dimension mismatch");
  }
  if (r < 1 || r > std::min(W.rows(), W.cols())) {
    throw InvalidInput("truncation_expansion: r out of range");
  }
  if (!(c_used > 0.0 && c_used < 0.5)) {
    throw InvalidInput("truncation_expansion: c_used must lie in (0, 1/2)");
  }
  Eigen::JacobiSVD<Matrix> svd(W, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();
  const double gamma = sv(r - 1);
  if (sv(0) <= 0.0 || gamma <= 1e-12 * sv(0) ||
      (r < sv.size() && sv(r) > 1e-12 * sv(0))) {
    throw InvalidInput("truncation_expansion: W does not have rank r");
  }
  const double e_norm = spectral_norm(E);
  if (e_norm > c_used * gamma) {
    throw HypothesisViolation(
        "truncation_expansion: ||E||_2 exceeds c * sigma_r(W)");
  }

  CompactSVD base{svd.matrixU().leftCols(r), sv.head(r),
                  svd.matrixV().leftCols(r)};
  const Matrix remainder =
      truncate_rank(W + E, r) - W - orthogonal_tangent_project(base, E);
  const double remainder_norm = spectral_norm(remainder);
  const double bound =
      (12.0 - 16.0 * c_used) / (1.0 - 2.0 * c_used) * e_norm * e_norm / gamma;
  return ExpansionReport{remainder_norm, bound, gamma, c_used,
                         remainder_norm <= bound + 1e-12};
}

Matrix cur_frechet_derivative(const TangentPoint& tp, const Matrix& E) {
  return oblique_tangent_project(tp, E);
}

Matrix finite_difference_derivative(MapKind kind, const Matrix& M,
                                    const SelectionPair& sel, int r,
                                    const Matrix& E, double t) {
  if (!(t > 0.0)) throw InvalidInput("finite_difference_derivative: t must be > 0");
  auto eval = [&](const Matrix& A) {
    return kind == MapKind::cur_truncated ? cur_rank_truncated(A, sel, r)
                                          : truncate_rank(A, r);
  };
  return (eval(M + t * E) - eval(M - t * E)) / (2.0 * t);
}

FirstOrderResidual cur_first_order_residual(const TangentPoint& tp,
                                            const Matrix& E) {
  const Matrix M = tp.svd.reconstruct();
  const int r = tp.svd.rank();
  const Matrix W = intersection(M, tp.sel);
  Eigen::JacobiSVD<Matrix> svd(W);
  const double gamma = svd.singularValues()(r - 1);
  const Matrix delta = intersection(E, tp.sel);
  if (spectral_norm(delta) > 0.2 * gamma) {
    throw HypothesisViolation(
        "cur_first_order_residual: ||S^T E P||_2 exceeds 0.2 sigma_r(S^T M P)");
  }
  const Matrix first = oblique_tangent_project(tp, E);
  const Matrix res = cur_rank_truncated(M + E, tp.sel, r) - M - first;
  return FirstOrderResidual{res.norm(), first.norm()};
}

FirstOrderResidual svd_first_order_residual(const CompactSVD& svd,
                                            const Matrix& E, int r) {
  const Matrix M = svd.reconstruct();
  if (r != svd.rank()) {
    throw InvalidInput("svd_first_order_residual: r does not match the base rank");
  }
  if (spectral_norm(E) > 0.2 * svd.sigmas(r - 1)) {
    throw HypothesisViolation(
        "svd_first_order_residual: ||E||_2 exceeds 0.2 sigma_r(M)");
  }
  const Matrix first = orthogonal_tangent_project(svd, E);
  const Matrix res = truncate_rank(M + E, r) - M - first;
  return FirstOrderResidual{res.norm(), first.norm()};
}

ConsequenceResiduals cur_pinv_consequence_check(const CompactSVD& svd,
                                                const SelectionPair& sel) {
  if (!is_admissible(svd, sel)) {
    throw AdmissibilityError(
        "cur_pinv_consequence_check: selection is not admissible");
  }
  const Matrix M = svd.reconstruct();
  const Matrix W = intersection(M, sel);
  const Matrix Wp = pinv(W, 1e-10);
  const Matrix R = select_rows(M, sel);
  const Matrix C = select_cols(M, sel);
  const double left_res = (R - W * (Wp * R)).norm();
  const double right_res = (C - (C * Wp) * W).norm();
  return ConsequenceResiduals{left_res, right_res};
}

}  // namespace curtangent
