#include "curtangent/sampling.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "curtangent/dense_core.hpp"

namespace curtangent {

namespace {

void check_indices(const std::vector<int>& idx, int bound, const char* side) {
  if (idx.empty()) {
    throw InvalidInput(std::string("make_selection: empty ") + side +
                       " index list");
  }
  std::unordered_set<int> seen;
  for (int i : idx) {
    if (i < 0 || i >= bound) {
      throw InvalidInput(std::string("make_selection: ") + side +
                         " index out of range");
    }
    if (!seen.insert(i).second) {
      throw InvalidInput(std::string("make_selection: duplicate ") + side +
                         " index");
    }
  }
}

}  // namespace

SelectionPair make_selection(std::vector<int> rows, std::vector<int> cols,
                             int m, int n) {
  check_indices(rows, m, "row");
  check_indices(cols, n, "col");
  return SelectionPair{std::move(rows), std::move(cols), m, n};
}

std::vector<double> leverage_scores(const Matrix& U) {
  const int r = static_cast<int>(U.cols());
  const Matrix gram = U.transpose() * U;
  if ((gram - Matrix::Identity(r, r)).norm() > 1e-8) {
    throw InvalidInput("leverage_scores: columns are not orthonormal");
  }
  std::vector<double> scores(U.rows());
  for (int i = 0; i < U.rows(); ++i) scores[i] = U.row(i).squaredNorm();
  return scores;
}

std::vector<int> top_k_selection(const std::vector<double>& scores, int k) {
  if (k < 1 || k > static_cast<int>(scores.size())) {
    throw InvalidInput("top_k_selection: k out of range");
  }
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  // Stable sort on descending score keeps the smallest index first on ties.
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores[a] > scores[b]; });
  std::vector<int> selected(order.begin(), order.begin() + k);
  std::sort(selected.begin(), selected.end());
  return selected;
}

bool is_admissible(const CompactSVD& svd, const SelectionPair& sel,
                   double tol) {
  if (svd.rows() != sel.m || svd.cols() != sel.n) {
    throw InvalidInput("is_admissible: ambient dimension mismatch");
  }
  const int r = svd.rank();
  if (sel.s() < r || sel.c() < r) return false;
  Matrix SU(sel.s(), r);
  for (int i = 0; i < sel.s(); ++i) SU.row(i) = svd.left.row(sel.row_indices[i]);
  Matrix VP(r, sel.c());
  for (int j = 0; j < sel.c(); ++j) {
    VP.col(j) = svd.right.row(sel.col_indices[j]).transpose();
  }
  Eigen::JacobiSVD<Matrix> su(SU);
  Eigen::JacobiSVD<Matrix> vp(VP);
  return su.singularValues().minCoeff() >= tol &&
         vp.singularValues().minCoeff() >= tol;
}

Matrix select_rows(const Matrix& A, const SelectionPair& sel) {
  Matrix out(sel.s(), A.cols());
  for (int i = 0; i < sel.s(); ++i) out.row(i) = A.row(sel.row_indices[i]);
  return out;
}

Matrix select_cols(const Matrix& A, const SelectionPair& sel) {
  Matrix out(A.rows(), sel.c());
  for (int j = 0; j < sel.c(); ++j) out.col(j) = A.col(sel.col_indices[j]);
  return out;
}

Matrix intersection(const Matrix& A, const SelectionPair& sel) {
  Matrix out(sel.s(), sel.c());
  for (int i = 0; i < sel.s(); ++i) {
    for (int j = 0; j < sel.c(); ++j) {
      out(i, j) = A(sel.row_indices[i], sel.col_indices[j]);
    }
  }
  return out;
}

Matrix complement_projector_left(const SelectionPair& sel) {
  Matrix out = Matrix::Identity(sel.m, sel.m);
  for (int i : sel.row_indices) out(i, i) = 0.0;
  return out;
}

Matrix complement_projector_right(const SelectionPair& sel) {
  Matrix out = Matrix::Identity(sel.n, sel.n);
  for (int j : sel.col_indices) out(j, j) = 0.0;
  return out;
}

}  // namespace curtangent
