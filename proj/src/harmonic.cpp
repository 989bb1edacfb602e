#include "bispec/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "bispec/wigner.hpp"

namespace bispec {

CoefficientSet::CoefficientSet(GroupTag tag, int L) : group(tag), bandlimit(L) {
  if (L < 0) throw DomainError("bandlimit must be nonnegative");
  matrices.reserve(L + 1);
  for (int ell = 0; ell <= L; ++ell) {
    const int n = irrep_dim(tag, ell);
    matrices.push_back(CMatrix::Zero(n, n));
  }
}

void CoefficientSet::validate() const {
  if (bandlimit < 0) throw DomainError("bandlimit must be nonnegative");
  if (static_cast<int>(matrices.size()) != bandlimit + 1)
    throw DomainError("coefficient count does not match bandlimit");
  for (int ell = 0; ell <= bandlimit; ++ell) {
    const int n = irrep_dim(group, ell);
    if (matrices[ell].rows() != n || matrices[ell].cols() != n)
      throw DomainError("coefficient F(" + std::to_string(ell) + ") has the wrong shape");
  }
}

double max_difference(const CoefficientSet& a, const CoefficientSet& b) {
  require_same_group(a.group, b.group);
  if (a.bandlimit != b.bandlimit) throw DomainError("bandlimit mismatch");
  double r = 0.0;
  for (int ell = 0; ell <= a.bandlimit; ++ell) r = std::max(r, (a[ell] - b[ell]).norm());
  return r;
}

double max_relative_difference(const CoefficientSet& a, const CoefficientSet& b) {
  require_same_group(a.group, b.group);
  if (a.bandlimit != b.bandlimit) throw DomainError("bandlimit mismatch");
  double r = 0.0;
  for (int ell = 0; ell <= a.bandlimit; ++ell)
    r = std::max(r, (a[ell] - b[ell]).norm() / std::max(a[ell].norm(), 1e-300));
  return r;
}

ForwardTransform fourier_forward_report(const SampledFunction& f, int bandlimit) {
  const QuadratureRule& rule = *f.quadrature;
  if (f.values.size() != rule.size()) throw DomainError("sample count does not match quadrature nodes");
  ForwardTransform out{CoefficientSet(rule.group(), bandlimit), {}};
  if (rule.bandlimit() < bandlimit)
    out.warning = "quadrature bandlimit " + std::to_string(rule.bandlimit()) +
                  " is below the transform bandlimit " + std::to_string(bandlimit) +
                  "; coefficients are approximate";
  const auto nodes = rule.nodes();
  const auto weights = rule.weights();
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const std::vector<CMatrix> D = wigner_all(bandlimit, nodes[i]);
    const Complex wf = weights[i] * f.values[i];
    for (int ell = 0; ell <= bandlimit; ++ell) out.coefficients[ell] += wf * D[ell].adjoint();
  }
  return out;
}

CoefficientSet fourier_forward(const SampledFunction& f, int bandlimit) {
  return fourier_forward_report(f, bandlimit).coefficients;
}

Complex evaluate(const CoefficientSet& F, const GroupElement& g) {
  require_same_group(F.group, g.group());
  const std::vector<CMatrix> D = wigner_all(F.bandlimit, g);
  Complex acc = 0.0;
  for (int ell = 0; ell <= F.bandlimit; ++ell) {
    // Tr(F D) without forming the product.
    const Complex tr = F[ell].cwiseProduct(D[ell].transpose()).sum();
    acc += static_cast<double>(irrep_dim(F.group, ell)) * tr;
  }
  return acc;
}

SampledFunction fourier_inverse(const CoefficientSet& F, std::shared_ptr<const QuadratureRule> rule) {
  if (!rule) rule = std::make_shared<const QuadratureRule>(F.bandlimit, F.group);
  require_same_group(F.group, rule->group());
  SampledFunction out{rule, {}};
  out.values.reserve(rule->size());
  for (const GroupElement& g : rule->nodes()) out.values.push_back(evaluate(F, g));
  return out;
}

CoefficientSet translate(const CoefficientSet& F, const GroupElement& x) {
  require_same_group(F.group, x.group());
  const std::vector<CMatrix> D = wigner_all(F.bandlimit, x);
  CoefficientSet out = F;
  for (int ell = 0; ell <= F.bandlimit; ++ell) out[ell] = F[ell] * D[ell];
  return out;
}

SampledFunction translate_samples(const CoefficientSet& F, const GroupElement& x,
                                  std::shared_ptr<const QuadratureRule> rule) {
  require_same_group(F.group, x.group());
  SampledFunction out{rule, {}};
  out.values.reserve(rule->size());
  for (const GroupElement& g : rule->nodes()) out.values.push_back(evaluate(F, x * g));
  return out;
}

double condition_number(const CMatrix& A) {
  if (A.size() == 0) return 1.0;
  Eigen::JacobiSVD<CMatrix> svd(A);
  const auto& s = svd.singularValues();
  const double smin = s[s.size() - 1];
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return s[0] / smin;
}

namespace {

CoefficientSet gaussian_coefficients(int L, GroupTag tag, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CoefficientSet F(tag, L);
  for (int ell = 0; ell <= L; ++ell)
    for (Eigen::Index i = 0; i < F[ell].rows(); ++i)
      for (Eigen::Index j = 0; j < F[ell].cols(); ++j) {
        const double re = normal(rng);
        const double im = normal(rng);
        F[ell](i, j) = Complex(re, im);
      }
  return F;
}

CoefficientSet real_projection(const CoefficientSet& F, std::shared_ptr<const QuadratureRule> rule) {
  SampledFunction f = fourier_inverse(F, rule);
  for (Complex& v : f.values) v = v.real();
  return fourier_forward(f, F.bandlimit);
}

bool well_conditioned(const CoefficientSet& F) {
  for (int ell = 0; ell <= F.bandlimit; ++ell)
    if (!(condition_number(F[ell]) <= kGeneratorConditionTarget)) return false;
  return true;
}

}  // namespace

CoefficientSet random_bandlimited(int bandlimit, GroupTag tag, const RandomCoefficientOptions& opts,
                                  std::uint64_t seed) {
  if (bandlimit < 0) throw DomainError("bandlimit must be nonnegative");
  std::mt19937_64 rng(seed);
  std::shared_ptr<const QuadratureRule> rule;
  if (opts.require_real) rule = std::make_shared<const QuadratureRule>(bandlimit, tag);
  for (int attempt = 0; attempt < std::max(1, opts.max_attempts); ++attempt) {
    CoefficientSet F = gaussian_coefficients(bandlimit, tag, rng);
    if (opts.require_real) F = real_projection(F, rule);
    if (!opts.require_nonsingular || well_conditioned(F)) return F;
  }
  throw Error("random_bandlimited: no well-conditioned draw within the attempt budget");
}

double max_imaginary_part(const CoefficientSet& F) {
  const SampledFunction f = fourier_inverse(F);
  double r = 0.0;
  for (const Complex& v : f.values) r = std::max(r, std::abs(v.imag()));
  return r;
}

}  // namespace bispec
