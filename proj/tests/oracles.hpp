// Test-only oracles, independent of the library's SVD-based code paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "curtangent/types.hpp"

namespace oracles {

// Spectral norm via power iteration on A^T A. Independent of any SVD routine.
inline double power_spectral_norm(const curtangent::Matrix& A,
                                  int iters = 500) {
  if (A.size() == 0) return 0.0;
  const curtangent::Matrix gram = A.transpose() * A;
  curtangent::Vector v = curtangent::Vector::Ones(A.cols());
  v.normalize();
  double lambda = 0.0;
  for (int i = 0; i < iters; ++i) {
    curtangent::Vector w = gram * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    lambda = norm;
    v = w / norm;
  }
  return std::sqrt(lambda);
}

// Brute-force top-k by full sort, smallest index wins ties.
inline std::vector<int> sort_top_k(const std::vector<double>& scores, int k) {
  std::vector<int> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  std::vector<int> out(order.begin(), order.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

// Deterministic dense matrix with entries independent of the library's
// Gaussian stream (std::mt19937 based).
inline curtangent::Matrix mt_random_matrix(int m, int n, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  curtangent::Matrix A(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = dist(gen);
  return A;
}

}  // namespace oracles
