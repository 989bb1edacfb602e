#pragma once

#include <vector>

#include "bispec/group.hpp"

namespace bispec {

// Wigner-D matrices in the z-y-z convention
//   D^j_{m'm}(alpha, beta, gamma) = exp(-i m' alpha) d^j_{m'm}(beta) exp(-i m gamma),
// i.e. D(g) = exp(-i alpha Jz) exp(-i beta Jy) exp(-i gamma Jz) with the
// Condon-Shortley J+-. Row/column index i corresponds to m = j - i
// (descending). With this ordering the SU(2) D_1 is exactly the 2x2 matrix
// of GroupElement::su2_matrix().

/// Little-d by Wigner's explicit sum. Spins are passed doubled.
/// cos_half = cos(beta/2), sin_half = sin(beta/2).
double wigner_d_direct(int two_j, int two_m_row, int two_m_col, double cos_half, double sin_half);

/// Little-d matrices d^j(beta) for every two_j = 0..two_j_max, built by the
/// three-term recursion in j (direct summation for the two lowest spins of
/// each (m', m) column and for ell <= 2).
std::vector<RMatrix> wigner_d_table(int two_j_max, double cos_half, double sin_half,
                                    bool integer_spins_only = false);

/// D_ell(g) for every ell = 0..L of g's group.
std::vector<CMatrix> wigner_all(int bandlimit, const GroupElement& g);

CMatrix wigner(const IrrepIndex& index, const GroupElement& g);
CMatrix wigner(int ell, const GroupElement& g);

/// Angular momentum generators in the descending-m basis.
struct AngularMomentum {
  RMatrix jz;
  RMatrix j_plus;
  RMatrix j_minus;
};
AngularMomentum angular_momentum(int two_j);

}  // namespace bispec
