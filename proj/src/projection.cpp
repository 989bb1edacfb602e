#include "bispec/projection.hpp"

#include <algorithm>

#include "bispec/clebsch_gordan.hpp"
#include "bispec/wigner.hpp"

namespace bispec {

SubgroupProjection subgroup_projection(const IrrepIndex& index) {
  const int n = index.dim();
  SubgroupProjection out{index, CMatrix::Zero(n, n), 0};
  // Average of exp(-i m theta) over a full period vanishes unless m = 0.
  const int tj = index.two_j();
  if (tj % 2 == 0) {
    out.P(tj / 2, tj / 2) = 1.0;
    out.rank = 1;
  }
  return out;
}

RMatrix convenient_permutation(const IrrepIndex& index) {
  const int n = index.dim();
  const int tj = index.two_j();
  RMatrix Q = RMatrix::Zero(n, n);
  if (tj % 2 != 0) return RMatrix::Identity(n, n);
  const int mid = tj / 2;
  Q(0, mid) = 1.0;
  int row = 1;
  for (int i = 0; i < n; ++i) {
    if (i == mid) continue;
    Q(row++, i) = 1.0;
  }
  return Q;
}

double projection_tensor_residual(const IrrepIndex& sigma, const IrrepIndex& delta) {
  const CGDecomposition& cg = clebsch_gordan(sigma, delta);
  const CMatrix PP = kron(subgroup_projection(sigma).P, subgroup_projection(delta).P);
  std::vector<CMatrix> blocks;
  for (int a : cg.indices) blocks.push_back(subgroup_projection({a, sigma.group}).P);
  const CMatrix rhs = PP * cg.C * direct_sum(blocks) * cg.C.adjoint();
  return (PP - rhs).norm();
}

double CosetHomomorphismReport::max_residual() const {
  return std::max(multiplicative_residual, conjugation_residual);
}

CosetHomomorphismReport coset_homomorphism_residual(const std::vector<CMatrix>& omega, GroupTag tag) {
  CosetHomomorphismReport report;
  const int max_ell = static_cast<int>(omega.size()) - 1;
  report.bandlimit = max_ell;
  for (int a = 0; a <= max_ell; ++a) {
    const CMatrix P = subgroup_projection({a, tag}).P;
    const double r = (omega[a] * omega[a].adjoint() - P).norm();
    report.conjugation_residual = std::max(report.conjugation_residual, r);
  }
  for (int s = 0; s <= max_ell; ++s) {
    for (int d = 0; s + d <= max_ell; ++d) {
      const IrrepIndex is{s, tag};
      const IrrepIndex id{d, tag};
      const CGDecomposition& cg = clebsch_gordan(is, id);
      std::vector<CMatrix> blocks;
      for (int a : cg.indices) blocks.push_back(omega[a]);
      const CMatrix PP = kron(subgroup_projection(is).P, subgroup_projection(id).P);
      const CMatrix rhs = PP * cg.C * direct_sum(blocks) * cg.C.adjoint();
      const double r = (kron(omega[s], omega[d]) - rhs).norm();
      report.multiplicative_residual = std::max(report.multiplicative_residual, r);
    }
  }
  return report;
}

std::vector<CMatrix> coset_evaluation(const GroupElement& g, int max_ell) {
  std::vector<CMatrix> D = wigner_all(max_ell, g);
  for (int a = 0; a <= max_ell; ++a) D[a] = subgroup_projection({a, g.group()}).P * D[a];
  return D;
}

CosetHomomorphismReport verify_coset_homomorphism(const GroupElement& g, int bandlimit) {
  CosetHomomorphismReport report =
      coset_homomorphism_residual(coset_evaluation(g, 2 * bandlimit), g.group());
  report.bandlimit = bandlimit;
  return report;
}

}  // namespace bispec
