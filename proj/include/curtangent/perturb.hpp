#pragma once

#include <cstdint>

#include "curtangent/sampling.hpp"
#include "curtangent/types.hpp"

namespace curtangent {

enum class PerturbationFamily { generic, invisible, normal, visible };

struct PerturbationSpec {
  PerturbationFamily family = PerturbationFamily::generic;
  double alpha = 0.0;  // only meaningful for visible
  std::uint64_t seed = 0;
};

/// Unit-Frobenius Gaussian matrix G / ||G||_F.
Matrix generic_perturbation(int m, int n, std::uint64_t seed);

/// Unit-Frobenius perturbation with the selected rows and columns identically
/// zero (assigned by index, so S^T E = 0 and E P = 0 hold bit-exactly).
Matrix invisible_perturbation(const SelectionPair& sel, std::uint64_t seed);

/// Unit-Frobenius perturbation in the normal space of the rank-r manifold at
/// M = U Sigma V^T:  (I - UU^T) G (I - VV^T), normalized.
Matrix normal_perturbation(const CompactSVD& svd, std::uint64_t seed);

/// Gradually visible perturbation E_alpha. One Gaussian draw G per seed is
/// split into its invisible block restriction E_inv and the visible rest
/// E_vis = G - E_inv; both are normalized separately and recombined as
/// (E_inv_hat + alpha * E_vis_hat), normalized.
Matrix visible_perturbation(const SelectionPair& sel, double alpha,
                            std::uint64_t seed);

/// Dispatch on the family tag. `sel` is used by invisible/visible, `svd` by
/// normal; generic only needs the ambient dimensions of sel.
Matrix make_perturbation(const PerturbationSpec& spec, const SelectionPair& sel,
                         const CompactSVD& svd);

}  // namespace curtangent
