#include "curtangent/cur_map.hpp"

#include "curtangent/dense_core.hpp"

namespace curtangent {

namespace {

void check_dims(const Matrix& A, const SelectionPair& sel, const char* who) {
  if (A.rows() != sel.m || A.cols() != sel.n) {
    throw InvalidInput(std::string(who) + ": matrix/selection dimension mismatch");
  }
}

}  // namespace

Matrix cur(const Matrix& A, const SelectionPair& sel, double rel_tol) {
  check_dims(A, sel, "cur");
  const Matrix C = select_cols(A, sel);
  const Matrix R = select_rows(A, sel);
  const Matrix W = intersection(A, sel);
  // Right-to-left association keeps the intermediate at c x n.
  return C * (pinv(W, rel_tol) * R);
}

Matrix cur_rank_truncated(const Matrix& A, const SelectionPair& sel, int r) {
  check_dims(A, sel, "cur_rank_truncated");
  if (r < 1 || r > std::min(sel.s(), sel.c())) {
    throw InvalidInput("cur_rank_truncated: r out of range");
  }
  const Matrix C = select_cols(A, sel);
  const Matrix R = select_rows(A, sel);
  const Matrix W = intersection(A, sel);
  return C * (pinv_truncated(W, r) * R);
}

}  // namespace curtangent
