#pragma once

#include <vector>

#include "curtangent/types.hpp"

namespace curtangent {

/// Row/column selection pattern. The selection matrices S (m x s) and
/// P (n x c) are never stored densely; the index lists are the pattern and
/// extraction is exact entry copying.
struct SelectionPair {
  std::vector<int> row_indices;  // distinct, in [0, m)
  std::vector<int> col_indices;  // distinct, in [0, n)
  int m = 0;
  int n = 0;

  int s() const { return static_cast<int>(row_indices.size()); }
  int c() const { return static_cast<int>(col_indices.size()); }
};

/// Validates index ranges, distinctness, and non-emptiness.
SelectionPair make_selection(std::vector<int> rows, std::vector<int> cols,
                             int m, int n);

/// Squared row norms ||e_i^T U||_2^2 of an orthonormal-column matrix.
/// Their sum equals the number of columns.
std::vector<double> leverage_scores(const Matrix& U);

/// Indices of the k largest scores, ties broken toward the smallest index,
/// returned in ascending index order.
std::vector<int> top_k_selection(const std::vector<double>& scores, int k);

/// True iff sigma_min(S^T U) >= tol and sigma_min(V^T P) >= tol, i.e. the
/// selection captures the row and column spaces of M = U Sigma V^T.
bool is_admissible(const CompactSVD& svd, const SelectionPair& sel,
                   double tol = 1e-8);

Matrix select_rows(const Matrix& A, const SelectionPair& sel);  // S^T A
Matrix select_cols(const Matrix& A, const SelectionPair& sel);  // A P
Matrix intersection(const Matrix& A, const SelectionPair& sel); // S^T A P

/// I - S S^T as an explicit m x m matrix.
Matrix complement_projector_left(const SelectionPair& sel);
/// I - P P^T as an explicit n x n matrix.
Matrix complement_projector_right(const SelectionPair& sel);

}  // namespace curtangent
