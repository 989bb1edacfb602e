#include "doctest.h"

#include "bispec/bispectrum.hpp"
#include "bispec/clebsch_gordan.hpp"
#include "test_util.hpp"

using namespace bispec;

namespace {

RandomCoefficientOptions real_nonsingular() {
  RandomCoefficientOptions o;
  o.require_real = true;
  o.require_nonsingular = true;
  return o;
}

}  // namespace

TEST_CASE("low-order bispectrum entries") {
  for (GroupTag tag : {GroupTag::SU2, GroupTag::SO3}) {
    CAPTURE(to_string(tag));
    const CoefficientSet F = random_bandlimited(3, tag, {}, 41);
    const Complex f0 = F[0](0, 0);
    CHECK(std::abs(bispectrum_matrix(F, 0, 0)(0, 0) - f0 * f0 * std::conj(f0)) < 1e-12);
    for (int p = 1; p <= 3; ++p) {
      const CMatrix expected = f0 * F[p] * F[p].adjoint();
      CHECK(test::rel(bispectrum_matrix(F, p, 0), expected) < 1e-12);
    }

    CoefficientSet c(tag, 0);
    c[0](0, 0) = 2.0;
    const BispectrumDescriptor d = build_descriptor(c);
    CHECK(d.entries.size() == 1);
    CHECK(std::abs(d.at(0, 0)(0, 0) - 8.0) < 1e-14);
    CHECK_FALSE(d.side_info_det_f1.has_value());
  }
  CHECK_THROWS_AS(bispectrum_matrix(CoefficientSet(GroupTag::SU2, 1), 2, 0), DomainError);
}

TEST_CASE("Hermitian slice A(p, 0)") {
  for (GroupTag tag : {GroupTag::SU2, GroupTag::SO3}) {
    const CoefficientSet F = random_bandlimited(4, tag, real_nonsingular(), 42);
    const double f0 = F[0](0, 0).real();
    CoefficientSet G = F;
    if (f0 < 0) G[0] *= -1.0;
    for (int p = 0; p <= 4; ++p) {
      const CMatrix A = bispectrum_matrix(G, p, 0);
      CHECK((A - A.adjoint()).norm() < 1e-10 * A.norm());
      Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (A + A.adjoint()));
      CHECK(es.eigenvalues().minCoeff() > -1e-10 * A.norm());
    }
  }
}

TEST_CASE("descriptor is translation invariant") {
  auto r = test::rng(43);
  for (GroupTag tag : {GroupTag::SU2, GroupTag::SO3}) {
    CAPTURE(to_string(tag));
    for (int t = 0; t < 4; ++t) {
      const CoefficientSet F = random_bandlimited(4, tag, real_nonsingular(), 100 + t);
      const GroupElement x = random_element(tag, r);
      const BispectrumDescriptor a = build_descriptor(F);
      const BispectrumDescriptor b = build_descriptor(translate(F, x));
      CHECK(descriptor_relative_difference(a, b) < 1e-9);
      CHECK(descriptor_distance(a, b) < 1e-8);
      if (tag == GroupTag::SO3) {
        REQUIRE(a.side_info_det_f1.has_value());
        CHECK(std::abs(*a.side_info_det_f1 - *b.side_info_det_f1) < 1e-10);
      }
    }
  }
}

TEST_CASE("descriptor distance") {
  const CoefficientSet F = random_bandlimited(3, GroupTag::SO3, real_nonsingular(), 44);
  const CoefficientSet G = random_bandlimited(3, GroupTag::SO3, real_nonsingular(), 45);
  const BispectrumDescriptor a = build_descriptor(F), b = build_descriptor(G);
  CHECK(descriptor_distance(a, a) == 0.0);
  CHECK(descriptor_distance(a, b) == descriptor_distance(b, a));
  CHECK(descriptor_distance(a, b) > 1e-2);
  CHECK_THROWS_AS(descriptor_distance(a, build_descriptor(random_bandlimited(2, GroupTag::SO3, {}, 1))), DomainError);
  CHECK_THROWS_AS(descriptor_distance(a, build_descriptor(random_bandlimited(3, GroupTag::SU2, {}, 1))),
                  TagMismatchError);

  // The weighting is dim(p) dim(q) on squared Frobenius norms.
  BispectrumDescriptor c = a;
  c.at(1, 2)(0, 0) += 0.5;
  CHECK(std::abs(descriptor_distance(a, c) - 0.5 * std::sqrt(3.0 * 5.0)) < 1e-12);
}

TEST_CASE("triple correlation") {
  auto r = test::rng(46);
  for (GroupTag tag : {GroupTag::SU2, GroupTag::SO3}) {
    CAPTURE(to_string(tag));
    CoefficientSet one(tag, 2);
    one[0](0, 0) = 1.0;
    const GroupElement g1 = random_element(tag, r), g2 = random_element(tag, r);
    CHECK(std::abs(triple_correlation(one, g1, g2) - 1.0) < 1e-12);

    // a(e, e) of a real f is the mean of f^3, here on a finer rule.
    const int L = 2;
    RandomCoefficientOptions real;
    real.require_real = true;
    const CoefficientSet F = random_bandlimited(L, tag, real, 47);
    const QuadratureRule fine(3 * L, tag);
    Complex cube = 0.0;
    for (std::size_t i = 0; i < fine.size(); ++i) cube += fine.weights()[i] * std::pow(evaluate(F, fine.nodes()[i]), 3);
    const GroupElement e = GroupElement::identity(tag);
    CHECK(std::abs(triple_correlation(F, e, e) - cube) < 1e-10);

    // Left-translation invariance.
    const GroupElement x = random_element(tag, r);
    CHECK(std::abs(triple_correlation(translate(F, x), g1, g2) - triple_correlation(F, g1, g2)) < 1e-9);

    // Sampled entry point agrees.
    const auto rule = std::make_shared<const QuadratureRule>(L, tag);
    CHECK(std::abs(triple_correlation(fourier_inverse(F, rule), L, g1, g2) - triple_correlation(F, g1, g2)) < 1e-10);
  }
}

TEST_CASE("triple correlation grid is translation invariant") {
  auto r = test::rng(48);
  const CoefficientSet F = random_bandlimited(1, GroupTag::SU2, {}, 49);
  const GroupElement x = random_element(GroupTag::SU2, r);
  const TripleCorrelationGrid a = triple_correlation_grid(F);
  const TripleCorrelationGrid b = triple_correlation_grid(translate(F, x), a.outer);
  CHECK((a.values - b.values).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(std::abs(a.values(3, 5) - triple_correlation(F, a.outer->nodes()[3], a.outer->nodes()[5])) < 1e-12);
}

TEST_CASE("matrix formula matches the triple-correlation oracle") {
  for (GroupTag tag : {GroupTag::SU2, GroupTag::SO3}) {
    CAPTURE(to_string(tag));
    const int L = 1;
    const CoefficientSet F = random_bandlimited(L, tag, {}, 50);
    const TripleCorrelationGrid grid = triple_correlation_grid(F);
    for (int p = 0; p <= L; ++p)
      for (int q = 0; q <= L; ++q) CHECK(test::rel(bispectrum_via_oracle(grid, p, q), bispectrum_matrix(F, p, q)) < 1e-6);

    CoefficientSet one(tag, L);
    one[0](0, 0) = 1.0;
    const TripleCorrelationGrid g1 = triple_correlation_grid(one);
    CHECK(std::abs(bispectrum_via_oracle(g1, 0, 0)(0, 0) - 1.0) < 1e-8);
    CHECK(bispectrum_via_oracle(g1, 1, 1).norm() < 1e-8);
    CHECK(bispectrum_via_oracle(g1, 1, 0).norm() < 1e-8);
  }
}

TEST_CASE("corrupted Clebsch-Gordan data breaks the oracle match") {
  const CoefficientSet F = random_bandlimited(2, GroupTag::SU2, {}, 51);
  const TripleCorrelationGrid grid = triple_correlation_grid(F);
  const CMatrix oracle = bispectrum_via_oracle(grid, 1, 1);
  testing::set_cg_corruption(true);
  const double err = test::rel(oracle, bispectrum_matrix(F, 1, 1));
  testing::set_cg_corruption(false);
  CHECK(err > 1e-3);
  CHECK(test::rel(oracle, bispectrum_matrix(F, 1, 1)) < 1e-6);
}

TEST_CASE("support closure") {
  CHECK(support_closure_check({0}, GroupTag::SU2, 0).closed);
  CHECK(support_closure_check({0}, GroupTag::SO3, 3).closed);
  CHECK(support_closure_check({0, 2, 4}, GroupTag::SU2, 4).closed);
  CHECK(support_closure_check({0, 2, 4}, GroupTag::SU2, 5).closed);
  CHECK(support_closure_check({0, 2, 4, 6, 8}, GroupTag::SU2, 8).closed);
  // 4 (x) 4 reaches 6 once the band admits it.
  const SupportClosureResult wide = support_closure_check({0, 2, 4}, GroupTag::SU2, 6);
  CHECK_FALSE(wide.closed);
  CHECK(wide.witness->missing == 6);
  CHECK_FALSE(support_closure_check({0, 2}, GroupTag::SO3, 4).closed);  // 2 (x) 2 contains 1
  const SupportClosureResult odd = support_closure_check({0, 1}, GroupTag::SU2, 4);
  CHECK_FALSE(odd.closed);
  REQUIRE(odd.witness.has_value());
  CHECK(odd.witness->p == 1);
  CHECK(odd.witness->q == 1);
  CHECK(odd.witness->missing == 2);
  CHECK_FALSE(odd.conjugation_note.empty());
  CHECK(support_closure_check({0, 1}, GroupTag::SU2, 1).closed);
  CHECK_FALSE(support_closure_check({0, 1}, GroupTag::SO3, 2).closed);
  CHECK_THROWS_AS(support_closure_check({1, 2}, GroupTag::SU2, 4), PreconditionError);
  CHECK_THROWS_AS(support_closure_check({0, 5}, GroupTag::SU2, 4), PreconditionError);
}

TEST_CASE("self-conjugacy of irreps") {
  for (GroupTag tag : {GroupTag::SU2, GroupTag::SO3})
    for (int ell = 0; ell <= 4; ++ell) CHECK(self_conjugacy_residual(IrrepIndex{ell, tag}) < 1e-10);
}
