#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bispec/harmonic.hpp"

namespace bispec {

/// A(p, q) = [F(p) (x) F(q)] C_pq [(+)_i F(a_i)^dagger] C_pq^dagger, with
/// F(a) = 0 for a above the bandlimit.
CMatrix bispectrum_matrix(const CoefficientSet& F, int p, int q);

/// All A(p, q) for p, q <= L, plus det F(1) for SO(3).
struct BispectrumDescriptor {
  GroupTag group = GroupTag::SO3;
  int bandlimit = 0;
  /// Row-major over (p, q): entries[p * (L + 1) + q].
  std::vector<CMatrix> entries;
  std::optional<double> side_info_det_f1;

  const CMatrix& at(int p, int q) const { return entries.at(slot(p, q)); }
  CMatrix& at(int p, int q) { return entries.at(slot(p, q)); }
  std::size_t slot(int p, int q) const;

  /// Throws DomainError on inconsistent shapes.
  void validate() const;
};

/// Side information is recorded for SO(3) when L >= 1 (the real part of
/// det F(1)).
BispectrumDescriptor build_descriptor(const CoefficientSet& F);

/// sqrt(sum_{p,q} dim(p) dim(q) ||A1(p,q) - A2(p,q)||_F^2). Side information
/// is not part of the distance.
double descriptor_distance(const BispectrumDescriptor& a, const BispectrumDescriptor& b);

/// max over (p, q) of ||A1 - A2|| / max(||A1||, eps).
double descriptor_relative_difference(const BispectrumDescriptor& a, const BispectrumDescriptor& b);

/// a(g1, g2) = integral of conj(f(g)) f(g g1) f(g g2) dg, computed on a rule
/// of bandlimit ceil(3L/2) (exact for f bandlimited at L). Off-node values of
/// f come from its coefficients.
Complex triple_correlation(const CoefficientSet& F, const GroupElement& g1, const GroupElement& g2);
Complex triple_correlation(const SampledFunction& f, int bandlimit, const GroupElement& g1,
                           const GroupElement& g2);

/// a(g_j, g_k) for all node pairs of an outer rule.
struct TripleCorrelationGrid {
  std::shared_ptr<const QuadratureRule> outer;
  /// values(j, k) = a(g_j, g_k).
  CMatrix values;
};

TripleCorrelationGrid triple_correlation_grid(const CoefficientSet& F,
                                              std::shared_ptr<const QuadratureRule> outer = nullptr);

/// A(p, q) = double integral of a(g1, g2) D_p(g1)^dagger (x) D_q(g2)^dagger,
/// by quadrature over the grid. Independent of the Clebsch-Gordan data.
CMatrix bispectrum_via_oracle(const TripleCorrelationGrid& grid, int p, int q);
CMatrix bispectrum_via_oracle(const SampledFunction& f, int bandlimit, int p, int q);

struct ClosureWitness {
  int p = 0;
  int q = 0;
  /// Tensor index of p (x) q missing from the support.
  int missing = 0;
};

struct SupportClosureResult {
  bool closed = true;
  std::optional<ClosureWitness> witness;
  /// Every SU(2)/SO(3) irrep is self-conjugate, so conjugation closure is
  /// automatic and only tensor closure is checked.
  std::string conjugation_note;
};

/// Closure of a support set inside the truncated dual {0, ..., bandlimit}:
/// for p, q in the support, every tensor index of p (x) q that does not
/// exceed the bandlimit must be in the support. Throws PreconditionError
/// unless 0 is in the support and the support lies in [0, bandlimit].
SupportClosureResult support_closure_check(const std::set<int>& support, GroupTag tag, int bandlimit);

/// || conj(D_ell(h)) J - J D_ell(h) || for a group-averaged intertwiner J
/// normalized to unit norm, at a few seeded h. Small iff conj(D) ~ D.
double self_conjugacy_residual(const IrrepIndex& index, std::uint64_t seed = 1);

}  // namespace bispec
