#pragma once

#include <vector>

#include "bispec/group.hpp"

namespace bispec {

/// P_ell = average of D_ell over the circle subgroup H of rotations about z
/// (for SU(2), the diagonal circle). In the descending-m basis P is diagonal
/// with a single 1 at m = 0 (none for half-integer spin).
struct SubgroupProjection {
  IrrepIndex index;
  CMatrix P;
  int rank = 0;
};

SubgroupProjection subgroup_projection(const IrrepIndex& index);

/// Permutation Q with Q P Q^T = diag(1, ..., 1, 0, ..., 0) (the form where
/// the H-invariant coordinates come first).
RMatrix convenient_permutation(const IrrepIndex& index);

/// Residual of P_s (x) P_d = [P_s (x) P_d] C [(+) P_a] C^dagger (Frobenius).
double projection_tensor_residual(const IrrepIndex& sigma, const IrrepIndex& delta);

/// Residuals of the multiplicative and conjugation conditions on a family of
/// matrices omega[ell] standing for omega(P_ell D_ell).
struct CosetHomomorphismReport {
  int bandlimit = 0;
  /// max over s,d with every tensor index present of
  /// || w_s (x) w_d - [P_s (x) P_d] C [(+) w_a] C^dagger ||_F
  double multiplicative_residual = 0.0;
  /// max over a of || w_a w_a^dagger - P_a ||_F
  double conjugation_residual = 0.0;

  double max_residual() const;
  bool passes(double tolerance = 1e-10) const { return max_residual() <= tolerance; }
};

/// omega must hold one matrix per ell = 0..M; pairs (s, d) are checked for
/// s + d <= M so that every tensor index is available.
CosetHomomorphismReport coset_homomorphism_residual(const std::vector<CMatrix>& omega, GroupTag tag);

/// The evaluation functional at the coset Hg: omega(P D) = P_ell D_ell(g),
/// built for ell <= 2L and checked for s, d <= L.
CosetHomomorphismReport verify_coset_homomorphism(const GroupElement& g, int bandlimit);

/// P_ell D_ell(g) for ell = 0..M.
std::vector<CMatrix> coset_evaluation(const GroupElement& g, int max_ell);

}  // namespace bispec
