#pragma once

#include <optional>
#include <vector>

#include "bispec/bispectrum.hpp"

namespace bispec {

/// x with Fhat(ell) ~ F(ell) D_ell(x), and the relative misfit per ell:
/// ||Fhat(ell) - F(ell) D_ell(x)||_F / max(||F(ell)||_F, eps).
struct AlignmentWitness {
  GroupElement x = GroupElement::identity(GroupTag::SO3);
  std::vector<double> per_ell_residuals;

  double max_residual() const;
};

struct ReconstructionReport {
  CoefficientSet recovered;
  std::optional<AlignmentWitness> witness;
  /// Condition number of each recovered Fhat(ell).
  std::vector<double> condition_numbers;
  /// descriptor_relative_difference(input, build_descriptor(recovered)).
  double descriptor_residual = 0.0;
};

/// Recovers {F(ell) D_ell(x)} for some x from the bispectrum of a real
/// function with nonsingular coefficients.
///
///   Fhat(0) = real cube root of A(0,0)
///   Fhat(1) = square root of A(1,0) / Fhat(0)
///   Fhat(l) = adjoint of the leading dim(l) block of
///             C^dagger [Fhat(l-1) (x) Fhat(1)]^{-1} A(l-1, 1) C
///
/// SU(2) uses the positive square root. SO(3) uses the Hermitian root whose
/// determinant matches side_info_det_f1, taken in the Cartesian frame.
/// Throws ZeroMeanError when A(0,0) = 0, SingularMatrixError (with ell)
/// when a recovered coefficient has condition number above 1e8, and
/// PreconditionError when SO(3) side information is missing.
ReconstructionReport reconstruct_su2(const BispectrumDescriptor& d);
ReconstructionReport reconstruct_so3(const BispectrumDescriptor& d);
/// Dispatches on d.group; attaches a witness when the truth is given.
ReconstructionReport reconstruct(const BispectrumDescriptor& d, const CoefficientSet* truth = nullptr);

/// x from V = F(1)^{-1} Fhat(1) projected onto the image of D_1, then
/// residuals over every ell. Throws AlignmentError if V is farther than 1e-3
/// from D_1(x), SingularMatrixError if F(1) is ill-conditioned.
AlignmentWitness find_alignment(const CoefficientSet& F, const CoefficientSet& Fhat);

/// Alignment of two sphere lifts (rank-one F(ell), only the m = 0 row
/// nonzero). The degree-1 rows fix x up to a rotation about one axis; the
/// angle is found by minimizing the misfit of the remaining degrees. Throws
/// AlignmentError when the degree-1 rows are zero or differ in length.
AlignmentWitness find_sphere_alignment(const CoefficientSet& F, const CoefficientSet& Fhat);

struct NormalizerCheck {
  bool in_normalizer = false;
  /// Largest distance of x R_z(theta) x^{-1} e_z from e_z over the samples.
  double max_deviation = 0.0;
};

/// Whether x H x^{-1} = H for H the rotations about z, tested at sampled
/// angles within 1e-9.
NormalizerCheck check_sphere_witness(const GroupElement& x);

}  // namespace bispec
