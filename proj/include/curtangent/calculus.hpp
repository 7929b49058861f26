#pragma once

#include "curtangent/sampling.hpp"
#include "curtangent/tangent.hpp"
#include "curtangent/types.hpp"

namespace curtangent {

/// Outcome of the quantitative rank-truncation expansion
/// (W + E)_r = W + P_{T_W} E + R_tr(E) with
/// ||R_tr(E)||_2 <= (12 - 16c)/(1 - 2c) * ||E||_2^2 / gamma.
struct ExpansionReport {
  double remainder_norm;  // ||R_tr(E)||_2
  double bound;
  double gamma;   // sigma_r(W)
  double c_used;  // in (0, 1/2)
  bool satisfied;
};

/// Derivative of the Moore-Penrose pseudoinverse along a fixed-rank curve:
/// -W^+ H W^+ + W^+ W^{+T} H^T (I - W W^+) + (I - W^+ W) H^T W^{+T} W^+.
/// Warns on stderr if Wdot has a significant normal component (the formula
/// assumes a fixed-rank direction).
Matrix pinv_derivative(const Matrix& W, const Matrix& Wdot);

/// ||(I - QQ^T) Wdot (I - ZZ^T)||_2 for W = Q Lambda Z^T; vanishes for
/// velocities of fixed-rank curves through W.
double fixed_rank_velocity_residual(const CompactSVD& svdW, const Matrix& Wdot);

/// Checks the expansion above. Requires ||E||_2 <= c_used * sigma_r(W)
/// (HypothesisViolation otherwise) and c_used in (0, 1/2).
ExpansionReport truncation_expansion(const Matrix& W, const Matrix& E, int r,
                                     double c_used = 0.2);

/// Frechet derivative of the rank-truncated CUR map at the base point:
/// equals the sampling-induced oblique tangent projection of E.
Matrix cur_frechet_derivative(const TangentPoint& tp, const Matrix& E);

enum class MapKind { cur_truncated, svd_truncated };

/// Central difference (F(M + tE) - F(M - tE)) / (2t) for F the
/// rank-truncated CUR map (uses sel and r) or rank-r SVD truncation
/// (uses r only). Independent oracle for the derivative results.
Matrix finite_difference_derivative(MapKind kind, const Matrix& M,
                                    const SelectionPair& sel, int r,
                                    const Matrix& E, double t);

struct FirstOrderResidual {
  double residual;     // || map(M+E) - M - first-order term ||_F
  double first_order;  // || first-order term ||_F
};

/// residual = ||Phi_r(M+E) - M - oblique_tangent_project(E)||_F.
/// Requires ||S^T E P||_2 <= 0.2 * sigma_r(S^T M P).
FirstOrderResidual cur_first_order_residual(const TangentPoint& tp,
                                            const Matrix& E);

/// residual = ||(M+E)_r - M - orthogonal_tangent_project(E)||_F.
/// Requires ||E||_2 <= 0.2 * sigma_r(M).
FirstOrderResidual svd_first_order_residual(const CompactSVD& svd,
                                            const Matrix& E, int r);

struct ConsequenceResiduals {
  double left_res;   // ||(I - W W^+) S^T M||_F
  double right_res;  // ||M P (I - W^+ W)||_F
};

/// For admissible (M, sel) with W = S^T M P, both residuals vanish; this is
/// what collapses the pseudoinverse derivative inside the CUR expansion.
ConsequenceResiduals cur_pinv_consequence_check(const CompactSVD& svd,
                                                const SelectionPair& sel);

}  // namespace curtangent
