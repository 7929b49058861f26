#pragma once

#include "curtangent/sampling.hpp"
#include "curtangent/types.hpp"

namespace curtangent {

/// Ordinary fixed-index CUR map  AP (S^T A P)^+ S^T A.
/// Not smooth across rank changes of the intersection; kept so tests can
/// exhibit the failure mode the rank truncation fixes.
Matrix cur(const Matrix& A, const SelectionPair& sel, double rel_tol = 1e-10);

/// Rank-truncated CUR map  AP (S^T A P)_r^+ S^T A, where the intersection is
/// replaced by its best rank-r approximation before pseudo-inversion.
Matrix cur_rank_truncated(const Matrix& A, const SelectionPair& sel, int r);

}  // namespace curtangent
