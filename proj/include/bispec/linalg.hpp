#pragma once

#include "bispec/types.hpp"

namespace bispec {

/// Unique Hermitian PSD R with R R = H. H must be Hermitian within
/// 1e-10 max(1, ||H||); eigenvalues down to -1e-10 max(1, ||H||) are clamped
/// to zero, anything more negative throws NotPsdError.
CMatrix positive_sqrt(const CMatrix& H);

/// Hermitian R with R R = H and sign(det R) = sign(target_det).
///
/// H must be Hermitian positive definite and |target_det| must equal
/// sqrt(det H) within 1e-6 relative. When the sign has to change, the root
/// of the smallest eigenvalue is negated (ties go to the lowest index). Real
/// symmetric input gives a real result.
CMatrix signed_sqrt(const CMatrix& H, double target_det);

struct PolarDecomposition {
  /// Hermitian positive definite, equal to positive_sqrt(A A^dagger).
  CMatrix H;
  CMatrix U;
};

/// A = H U. Throws SingularMatrixError if cond(A) > 1e8.
PolarDecomposition polar_decompose(const CMatrix& A);

/// The unitary U with D_1(g) = U g U^dagger for an SO(3) rotation g. Rows
/// are the spherical basis vectors e_m^dagger, m = 1, 0, -1:
///   e_{+1} = -(x + i y)/sqrt 2,  e_0 = z,  e_{-1} = (x - i y)/sqrt 2.
CMatrix so3_vector_basis();

/// Nearest rotation matrix in Frobenius norm.
Eigen::Matrix3d nearest_rotation(const Eigen::Matrix3d& M);

}  // namespace bispec
