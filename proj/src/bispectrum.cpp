#include "bispec/bispectrum.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bispec/clebsch_gordan.hpp"
#include "bispec/wigner.hpp"

namespace bispec {

CMatrix bispectrum_matrix(const CoefficientSet& F, int p, int q) {
  if (p < 0 || q < 0 || p > F.bandlimit || q > F.bandlimit)
    throw DomainError("bispectrum index outside the bandlimit");
  const CGDecomposition& cg = clebsch_gordan(IrrepIndex{p, F.group}, IrrepIndex{q, F.group});
  const Eigen::Index n = cg.C.rows();
  // C [(+) F(a)^dagger], one block of columns at a time.
  CMatrix CB = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < cg.indices.size(); ++i) {
    const int a = cg.indices[i];
    if (a > F.bandlimit) continue;
    const int d = cg.block_dim(i);
    CB.middleCols(cg.offsets[i], d) = cg.C.middleCols(cg.offsets[i], d) * F[a].adjoint();
  }
  return kron(F[p], F[q]) * CB * cg.C.adjoint();
}

std::size_t BispectrumDescriptor::slot(int p, int q) const {
  if (p < 0 || q < 0 || p > bandlimit || q > bandlimit) throw DomainError("descriptor index outside the bandlimit");
  return static_cast<std::size_t>(p) * (bandlimit + 1) + q;
}

void BispectrumDescriptor::validate() const {
  if (bandlimit < 0) throw DomainError("bandlimit must be nonnegative");
  const std::size_t n = static_cast<std::size_t>(bandlimit + 1);
  if (entries.size() != n * n) throw DomainError("descriptor entry count does not match bandlimit");
  for (int p = 0; p <= bandlimit; ++p)
    for (int q = 0; q <= bandlimit; ++q) {
      const int d = irrep_dim(group, p) * irrep_dim(group, q);
      if (at(p, q).rows() != d || at(p, q).cols() != d)
        throw DomainError("descriptor entry A(" + std::to_string(p) + "," + std::to_string(q) +
                          ") has the wrong shape");
    }
}

BispectrumDescriptor build_descriptor(const CoefficientSet& F) {
  F.validate();
  BispectrumDescriptor d;
  d.group = F.group;
  d.bandlimit = F.bandlimit;
  d.entries.resize(static_cast<std::size_t>(F.bandlimit + 1) * (F.bandlimit + 1));
  for (int p = 0; p <= F.bandlimit; ++p)
    for (int q = 0; q <= F.bandlimit; ++q) d.at(p, q) = bispectrum_matrix(F, p, q);
  if (F.group == GroupTag::SO3 && F.bandlimit >= 1) d.side_info_det_f1 = F[1].determinant().real();
  return d;
}

namespace {

void require_compatible(const BispectrumDescriptor& a, const BispectrumDescriptor& b) {
  require_same_group(a.group, b.group);
  if (a.bandlimit != b.bandlimit) throw DomainError("descriptor bandlimits differ");
  a.validate();
  b.validate();
}

}  // namespace

double descriptor_distance(const BispectrumDescriptor& a, const BispectrumDescriptor& b) {
  require_compatible(a, b);
  double acc = 0.0;
  for (int p = 0; p <= a.bandlimit; ++p)
    for (int q = 0; q <= a.bandlimit; ++q)
      acc += irrep_dim(a.group, p) * irrep_dim(a.group, q) * (a.at(p, q) - b.at(p, q)).squaredNorm();
  return std::sqrt(acc);
}

double descriptor_relative_difference(const BispectrumDescriptor& a, const BispectrumDescriptor& b) {
  require_compatible(a, b);
  double r = 0.0;
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    r = std::max(r, (a.entries[i] - b.entries[i]).norm() / std::max(a.entries[i].norm(), 1e-300));
  return r;
}

namespace {

std::shared_ptr<const QuadratureRule> inner_rule(const CoefficientSet& F) {
  return std::make_shared<const QuadratureRule>((3 * F.bandlimit + 1) / 2, F.group);
}

}  // namespace

Complex triple_correlation(const CoefficientSet& F, const GroupElement& g1, const GroupElement& g2) {
  require_same_group(F.group, g1.group());
  require_same_group(F.group, g2.group());
  const auto rule = inner_rule(F);
  Complex acc = 0.0;
  for (std::size_t i = 0; i < rule->size(); ++i) {
    const GroupElement& g = rule->nodes()[i];
    acc += rule->weights()[i] * std::conj(evaluate(F, g)) * evaluate(F, g * g1) * evaluate(F, g * g2);
  }
  return acc;
}

Complex triple_correlation(const SampledFunction& f, int bandlimit, const GroupElement& g1,
                           const GroupElement& g2) {
  return triple_correlation(fourier_forward(f, bandlimit), g1, g2);
}

TripleCorrelationGrid triple_correlation_grid(const CoefficientSet& F, std::shared_ptr<const QuadratureRule> outer) {
  if (!outer) outer = std::make_shared<const QuadratureRule>(F.bandlimit, F.group);
  require_same_group(F.group, outer->group());
  const auto inner = inner_rule(F);
  const Eigen::Index ni = static_cast<Eigen::Index>(inner->size());
  const Eigen::Index no = static_cast<Eigen::Index>(outer->size());
  // Phi(i, j) = f(h_i g_j); a(g_j, g_k) = sum_i w_i conj(f(h_i)) Phi(i, j) Phi(i, k).
  CMatrix Phi(ni, no);
  CVector weighted(ni);
  for (Eigen::Index i = 0; i < ni; ++i) {
    const GroupElement& h = inner->nodes()[i];
    weighted[i] = inner->weights()[i] * std::conj(evaluate(F, h));
    for (Eigen::Index j = 0; j < no; ++j) Phi(i, j) = evaluate(F, h * outer->nodes()[j]);
  }
  return {outer, Phi.transpose() * weighted.asDiagonal() * Phi};
}

CMatrix bispectrum_via_oracle(const TripleCorrelationGrid& grid, int p, int q) {
  const QuadratureRule& rule = *grid.outer;
  const GroupTag tag = rule.group();
  const std::size_t n = rule.size();
  std::vector<CMatrix> Dp(n), Dq(n);
  for (std::size_t i = 0; i < n; ++i) {
    Dp[i] = wigner(IrrepIndex{p, tag}, rule.nodes()[i]).adjoint();
    Dq[i] = wigner(IrrepIndex{q, tag}, rule.nodes()[i]).adjoint();
  }
  const int dp = irrep_dim(tag, p), dq = irrep_dim(tag, q);
  CMatrix A = CMatrix::Zero(dp * dq, dp * dq);
  for (std::size_t j = 0; j < n; ++j) {
    CMatrix inner = CMatrix::Zero(dq, dq);
    for (std::size_t k = 0; k < n; ++k) inner += (rule.weights()[k] * grid.values(j, k)) * Dq[k];
    A += rule.weights()[j] * kron(Dp[j], inner);
  }
  return A;
}

CMatrix bispectrum_via_oracle(const SampledFunction& f, int bandlimit, int p, int q) {
  return bispectrum_via_oracle(triple_correlation_grid(fourier_forward(f, bandlimit)), p, q);
}

SupportClosureResult support_closure_check(const std::set<int>& support, GroupTag tag, int bandlimit) {
  if (!support.contains(0)) throw PreconditionError("support must contain the trivial representation 0");
  if (*support.begin() < 0 || *support.rbegin() > bandlimit)
    throw PreconditionError("support must lie in [0, bandlimit]");
  SupportClosureResult out;
  out.conjugation_note =
      "every irrep of " + std::string(to_string(tag)) + " is self-conjugate up to equivalence; conjugation closure is automatic";
  for (int p : support)
    for (int q : support) {
      if (q < p) continue;
      for (int a : tensor_indices(IrrepIndex{p, tag}, IrrepIndex{q, tag}))
        if (a <= bandlimit && !support.contains(a)) {
          out.closed = false;
          out.witness = ClosureWitness{p, q, a};
          return out;
        }
    }
  return out;
}

double self_conjugacy_residual(const IrrepIndex& index, std::uint64_t seed) {
  const QuadratureRule rule(index.ell, index.group);
  const int n = index.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  CMatrix X(n, n);
  for (Eigen::Index i = 0; i < X.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    X(i) = Complex(re, im);
  }
  CMatrix J = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const CMatrix D = wigner(index, rule.nodes()[i]);
    J += rule.weights()[i] * D.conjugate() * X * D.adjoint();
  }
  const double norm = J.norm();
  if (!(norm > 1e-8)) return 1.0;
  J /= norm;
  double r = 0.0;
  for (int t = 0; t < 3; ++t) {
    const CMatrix D = wigner(index, random_element(index.group, rng));
    r = std::max(r, (D.conjugate() * J - J * D).norm());
  }
  return r;
}

}  // namespace bispec
