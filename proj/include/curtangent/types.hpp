#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace curtangent {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Input violates a precondition: bad dimensions, out-of-range index,
/// non-finite entries.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A lemma/theorem hypothesis fails. The quantity could be computed, but the
/// guarantee attached to it would be void, so we refuse instead.
class HypothesisViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The sampling pair does not capture the row/column space of the base point.
class AdmissibilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Construction would divide by zero or has no degrees of freedom left
/// (e.g. full selection leaves no invisible complement).
class DegenerateInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Repeated random draws failed to produce a usable problem instance.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Compact SVD: A = left * diag(sigmas) * right^T with orthonormal factor
/// columns and strictly positive, non-increasing singular values.
struct CompactSVD {
  Matrix left;    // m x k
  Vector sigmas;  // k
  Matrix right;   // n x k

  int rank() const { return static_cast<int>(sigmas.size()); }
  int rows() const { return static_cast<int>(left.rows()); }
  int cols() const { return static_cast<int>(right.rows()); }

  Matrix reconstruct() const {
    return left * sigmas.asDiagonal() * right.transpose();
  }
};

}  // namespace curtangent
