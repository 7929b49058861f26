#pragma once

#include "curtangent/sampling.hpp"
#include "curtangent/types.hpp"

namespace curtangent {

/// Rank-r base point together with its cached sampling-induced oblique
/// projectors Pi_U = U (S^T U)^+ S^T and Pi_V = P (V^T P)^+ V^T.
/// Immutable after construction; safe to share across threads.
struct TangentPoint {
  CompactSVD svd;
  SelectionPair sel;
  Matrix pi_u;  // m x m
  Matrix pi_v;  // n x n
};

/// Builds the cached projectors. Throws AdmissibilityError when the
/// selection does not capture the row/column spaces of the base point.
TangentPoint make_tangent_point(const CompactSVD& svd, const SelectionPair& sel,
                                double tol = 1e-8);

/// Orthogonal projector onto the tangent space of the rank-r manifold:
/// UU^T Z + Z VV^T - UU^T Z VV^T.
Matrix orthogonal_tangent_project(const CompactSVD& svd, const Matrix& Z);

/// Projector onto the normal space: (I - UU^T) Z (I - VV^T).
Matrix normal_project(const CompactSVD& svd, const Matrix& Z);

/// Sampling-induced oblique tangent projector:
/// Pi_U E + E Pi_V - Pi_U E Pi_V.
Matrix oblique_tangent_project(const TangentPoint& tp, const Matrix& E);

struct Obliqueness {
  double delta_u;    // ||Pi_U - UU^T||_2
  double delta_v;    // ||Pi_V - VV^T||_2
  double norm_pi_v;  // ||Pi_V||_2
};

Obliqueness obliqueness(const TangentPoint& tp);

/// Comparison between the oblique and orthogonal tangent projections of E:
/// lhs = ||oblique - orthogonal||_2 applied to E,
/// rhs = (delta_U (1 + ||Pi_V||_2) + 2 delta_V) ||E||_2.
struct ComparisonGap {
  double lhs;
  double rhs;
};

ComparisonGap comparison_gap(const TangentPoint& tp, const Matrix& E);

}  // namespace curtangent
