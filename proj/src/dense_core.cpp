#include "curtangent/dense_core.hpp"

#include <cmath>
#include <numbers>

namespace curtangent {

namespace {

Eigen::JacobiSVD<Matrix> thin_svd(const Matrix& A) {
  return Eigen::JacobiSVD<Matrix>(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
}

void check_finite(const Matrix& A, const char* who) {
  if (!A.allFinite()) {
    throw InvalidInput(std::string(who) + ": input has non-finite entries");
  }
}

// splitmix64: one 64-bit output per counter increment.
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// uniform in (0, 1]
double uniform_open(std::uint64_t& state) {
  return (static_cast<double>(splitmix64(state) >> 11) + 1.0) * 0x1p-53;
}

}  // namespace

CompactSVD compact_svd(const Matrix& A, double rel_tol) {
  check_finite(A, "compact_svd");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw InvalidInput("compact_svd: rel_tol must lie in (0, 1)");
  }
  auto svd = thin_svd(A);
  const Vector& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? rel_tol * sv(0) : 0.0;
  int k = 0;
  while (k < sv.size() && sv(k) > cutoff) ++k;

  CompactSVD out;
  out.left = svd.matrixU().leftCols(k);
  out.sigmas = sv.head(k);
  out.right = svd.matrixV().leftCols(k);

  for (int j = 0; j < k; ++j) {
    Eigen::Index imax;
    out.left.col(j).cwiseAbs().maxCoeff(&imax);
    if (out.left(imax, j) < 0.0) {
      out.left.col(j) = -out.left.col(j);
      out.right.col(j) = -out.right.col(j);
    }
  }
  return out;
}

Matrix truncate_rank(const Matrix& A, int r) {
  check_finite(A, "truncate_rank");
  if (r < 1 || r > std::min(A.rows(), A.cols())) {
    throw InvalidInput("truncate_rank: r out of range");
  }
  auto svd = thin_svd(A);
  return svd.matrixU().leftCols(r) *
         svd.singularValues().head(r).asDiagonal() *
         svd.matrixV().leftCols(r).transpose();
}

Matrix pinv(const Matrix& A, double rel_tol) {
  check_finite(A, "pinv");
  auto svd = thin_svd(A);
  const Vector& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? rel_tol * sv(0) : 0.0;
  Vector inv = Vector::Zero(sv.size());
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) inv(i) = 1.0 / sv(i);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Matrix pinv_truncated(const Matrix& A, int r, double rel_tol) {
  check_finite(A, "pinv_truncated");
  if (r < 1 || r > std::min(A.rows(), A.cols())) {
    throw InvalidInput("pinv_truncated: r out of range");
  }
  auto svd = thin_svd(A);
  const Vector& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? rel_tol * sv(0) : 0.0;
  Vector inv = Vector::Zero(sv.size());
  for (int i = 0; i < r; ++i) {
    if (sv(i) > cutoff) inv(i) = 1.0 / sv(i);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

double spectral_norm(const Matrix& A) {
  if (A.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(A);
  return svd.singularValues()(0);
}

double fro_norm(const Matrix& A) { return A.norm(); }

Matrix gaussian_matrix(int m, int n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw InvalidInput("gaussian_matrix: dims must be >= 1");
  Matrix G(m, n);
  std::uint64_t state = seed;
  double spare = 0.0;
  bool have_spare = false;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (have_spare) {
        G(i, j) = spare;
        have_spare = false;
      } else {
        const double u1 = uniform_open(state);
        const double u2 = uniform_open(state);
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * std::numbers::pi * u2;
        G(i, j) = rad * std::cos(ang);
        spare = rad * std::sin(ang);
        have_spare = true;
      }
    }
  }
  return G;
}

Matrix orthonormalize_gaussian(int m, int r, std::uint64_t seed) {
  if (r > m) throw InvalidInput("orthonormalize_gaussian: r must be <= m");
  Matrix G = gaussian_matrix(m, r, seed);
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ() * Matrix::Identity(m, r);
  // Fix signs so R has positive diagonal; makes Q a function of G alone.
  Matrix R = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  for (int j = 0; j < r; ++j) {
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  }
  return Q;
}

}  // namespace curtangent
