#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bispec/quadrature.hpp"

namespace bispec {

/// Fourier coefficients F(ell) = integral of f(g) D_ell(g)^dagger dg, ell = 0..L.
struct CoefficientSet {
  GroupTag group = GroupTag::SO3;
  int bandlimit = 0;
  std::vector<CMatrix> matrices;

  CoefficientSet() = default;
  /// Zero coefficients with the right shapes.
  CoefficientSet(GroupTag tag, int L);

  const CMatrix& operator[](int ell) const { return matrices.at(ell); }
  CMatrix& operator[](int ell) { return matrices.at(ell); }

  /// Throws DomainError if the matrix count or shapes are inconsistent.
  void validate() const;
};

/// Largest Frobenius norm of F1(ell) - F2(ell).
double max_difference(const CoefficientSet& a, const CoefficientSet& b);
/// max over ell of ||a - b|| / max(||a||, eps).
double max_relative_difference(const CoefficientSet& a, const CoefficientSet& b);

/// Values of a function at the nodes of a quadrature rule.
struct SampledFunction {
  std::shared_ptr<const QuadratureRule> quadrature;
  std::vector<Complex> values;

  GroupTag group() const { return quadrature->group(); }
};

struct ForwardTransform {
  CoefficientSet coefficients;
  /// Empty when the rule integrates the requested band exactly.
  std::string warning;
};

/// F(ell) = sum_i w_i f(g_i) D_ell(g_i)^dagger. Exact for f bandlimited at
/// L when the rule's bandlimit is at least L.
ForwardTransform fourier_forward_report(const SampledFunction& f, int bandlimit);
CoefficientSet fourier_forward(const SampledFunction& f, int bandlimit);

/// f(g) = sum_ell c_ell Tr[F(ell) D_ell(g)], c_ell = dim(ell).
Complex evaluate(const CoefficientSet& F, const GroupElement& g);

/// Samples on the given rule, or on haar_quadrature(F.bandlimit) if null.
SampledFunction fourier_inverse(const CoefficientSet& F,
                                std::shared_ptr<const QuadratureRule> rule = nullptr);

/// {F(ell) D_ell(x)}, the coefficients of g -> f(x g).
CoefficientSet translate(const CoefficientSet& F, const GroupElement& x);

/// Samples g -> f(x g) on the same rule, evaluated from the coefficients.
SampledFunction translate_samples(const CoefficientSet& F, const GroupElement& x,
                                  std::shared_ptr<const QuadratureRule> rule);

/// Condition-number thresholds for "nonsingular" coefficients.
inline constexpr double kSingularConditionLimit = 1e8;
inline constexpr double kGeneratorConditionTarget = 1e4;

struct RandomCoefficientOptions {
  bool require_nonsingular = false;
  bool require_real = false;
  int max_attempts = 200;
};

/// Seeded Gaussian coefficients. require_real projects onto real functions
/// (sample, take the real part, transform back); require_nonsingular redraws
/// until every F(ell) has condition number <= 1e4. Throws Error if the
/// attempts run out.
CoefficientSet random_bandlimited(int bandlimit, GroupTag tag, const RandomCoefficientOptions& opts,
                                  std::uint64_t seed);

/// Largest |Im f(g_i)| over the nodes of haar_quadrature(L).
double max_imaginary_part(const CoefficientSet& F);

/// 2-norm condition number (infinity for singular matrices).
double condition_number(const CMatrix& A);

}  // namespace bispec
