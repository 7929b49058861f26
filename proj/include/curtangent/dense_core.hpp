#pragma once

#include <cstdint>

#include "curtangent/types.hpp"

namespace curtangent {

/// Compact SVD keeping singular values > rel_tol * sigma_max(A).
/// Sign convention: the largest-magnitude entry of each left singular vector
/// is made non-negative (the paired right vector is flipped with it).
CompactSVD compact_svd(const Matrix& A, double rel_tol = 1e-10);

/// Best rank-<=r approximation (Eckart-Young), assembled from the r largest
/// singular triplets.
Matrix truncate_rank(const Matrix& A, int r);

/// Moore-Penrose pseudoinverse via SVD, zeroing singular values
/// <= rel_tol * sigma_max(A).
Matrix pinv(const Matrix& A, double rel_tol = 1e-10);

/// Pseudoinverse of the best rank-r approximation: the SVD is truncated to
/// the r largest singular values and only those retained values are inverted.
Matrix pinv_truncated(const Matrix& A, int r, double rel_tol = 1e-10);

double spectral_norm(const Matrix& A);
double fro_norm(const Matrix& A);

/// m x n matrix of i.i.d. standard normal entries. Deterministic per seed
/// (splitmix64 counter stream through Box-Muller), identical seeds give
/// bit-identical matrices.
Matrix gaussian_matrix(int m, int n, std::uint64_t seed);

/// m x r matrix with orthonormal columns spanning the column space of
/// gaussian_matrix(m, r, seed), via Householder QR.
Matrix orthonormalize_gaussian(int m, int r, std::uint64_t seed);

}  // namespace curtangent
