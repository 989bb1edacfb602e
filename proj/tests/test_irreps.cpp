#include "doctest.h"

#include <unsupported/Eigen/MatrixFunctions>

#include "bispec/clebsch_gordan.hpp"
#include "bispec/projection.hpp"
#include "bispec/quadrature.hpp"
#include "bispec/wigner.hpp"
#include "test_util.hpp"

using namespace bispec;
using bispec::test::kPi;

TEST_CASE("trivial representation and identity") {
  auto r = test::rng(11);
  for (GroupTag tag : {GroupTag::SU2, GroupTag::SO3}) {
    for (int i = 0; i < 10; ++i) {
      const CMatrix D0 = wigner(0, random_element(tag, r));
      CHECK(D0.rows() == 1);
      CHECK(std::abs(D0(0, 0) - 1.0) < 1e-15);
    }
    for (int ell = 0; ell <= 8; ++ell) {
      const CMatrix D = wigner(ell, GroupElement::identity(tag));
      CHECK(D.rows() == irrep_dim(tag, ell));
      CHECK((D - CMatrix::Identity(D.rows(), D.cols())).norm() < 1e-14);
    }
  }
}

TEST_CASE("IrrepIndex dimensions") {
  CHECK(IrrepIndex{3, GroupTag::SU2}.dim() == 4);
  CHECK(IrrepIndex{3, GroupTag::SO3}.dim() == 7);
}

TEST_CASE("recursion agrees with the explicit sum") {
  auto r = test::rng(12);
  for (int t = 0; t < 10; ++t) {
    const double beta = test::uniform(r, 0.0, kPi);
    const double c = std::cos(beta / 2), s = std::sin(beta / 2);
    const int tjmax = 32;
    const auto table = wigner_d_table(tjmax, c, s);
    double worst = 0.0;
    for (int tj = 0; tj <= tjmax; ++tj)
      for (int i = 0; i <= tj; ++i)
        for (int k = 0; k <= tj; ++k)
          worst = std::max(worst, std::abs(table[tj](i, k) - wigner_d_direct(tj, tj - 2 * i, tj - 2 * k, c, s)));
    // the explicit sum itself loses digits to cancellation at j = 16
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("little-d known values") {
  const double beta = 0.7;
  const double c = std::cos(beta / 2), s = std::sin(beta / 2);
  CHECK(std::abs(wigner_d_direct(2, 0, 0, c, s) - std::cos(beta)) < 1e-15);
  CHECK(std::abs(wigner_d_direct(2, 2, 0, c, s) + std::sin(beta) / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(wigner_d_direct(4, 0, 0, c, s) - 0.5 * (3 * std::cos(beta) * std::cos(beta) - 1)) < 1e-15);
  CHECK(std::abs(wigner_d_direct(1, -1, 1, c, s) - s) < 1e-15);
}

TEST_CASE("Wigner matrices are exponentials of the generators") {
  auto r = test::rng(13);
  const Complex I(0, 1);
  for (int tj = 0; tj <= 8; ++tj) {
    const AngularMomentum J = angular_momentum(tj);
    const CMatrix Jz = J.jz.cast<Complex>();
    const CMatrix Jy = (J.j_plus - J.j_minus).cast<Complex>() / (2.0 * I);
    const double a = test::uniform(r, 0, 2 * kPi), b = test::uniform(r, 0, kPi), c = test::uniform(r, 0, 2 * kPi);
    const CMatrix expected = CMatrix(-I * a * Jz).exp() * CMatrix(-I * b * Jy).exp() * CMatrix(-I * c * Jz).exp();
    const GroupTag tag = tj % 2 ? GroupTag::SU2 : GroupTag::SO3;
    const int ell = tag == GroupTag::SU2 ? tj : tj / 2;
    const CMatrix D = wigner(ell, euler_element(a, b, c, tag));
    CHECK((D - expected).norm() < 1e-12);
  }
}

TEST_CASE("SU(2) D_1 is the defining representation") {
  auto r = test::rng(14);
  for (int i = 0; i < 50; ++i) {
    const GroupElement g = random_element(GroupTag::SU2, r);
    CHECK((wigner(1, g) - CMatrix(g.su2_matrix())).norm() < 1e-13);
  }
}

TEST_CASE("homomorphism and unitarity, ell <= 8") {
  auto r = test::rng(15);
  for (GroupTag tag : {GroupTag::SU2, GroupTag::SO3}) {
    double hom = 0.0, unit = 0.0;
    for (int i = 0; i < 100; ++i) {
      const GroupElement g1 = random_element(tag, r);
      const GroupElement g2 = random_element(tag, r);
      const auto D1 = wigner_all(8, g1);
      const auto D2 = wigner_all(8, g2);
      const auto D12 = wigner_all(8, g1 * g2);
      for (int ell = 0; ell <= 8; ++ell) {
        hom = std::max(hom, (D12[ell] - D1[ell] * D2[ell]).norm());
        unit = std::max(unit, (D1[ell] * D1[ell].adjoint() - CMatrix::Identity(D1[ell].rows(), D1[ell].rows())).norm());
      }
    }
    CHECK(hom < 1e-10);
    CHECK(unit < 1e-11);
  }
}

TEST_CASE("Wigner at degenerate Euler angles") {
  for (GroupTag tag : {GroupTag::SU2, GroupTag::SO3}) {
    for (double beta : {0.0, kPi}) {
      const GroupElement g1 = euler_element(0.3, beta, 1.1, tag);
      const GroupElement g2 = euler_element(2.1, 0.4, 0.2, tag);
      for (int ell = 0; ell <= 4; ++ell)
        CHECK((wigner(ell, g1 * g2) - wigner(ell, g1) * wigner(ell, g2)).norm() < 1e-11);
    }
  }
}

namespace {

double intertwiner_residual(const CGDecomposition& cg, const GroupElement& g) {
  const int L = std::max(cg.p.ell + cg.q.ell, 0);
  const auto D = wigner_all(L, g);
  std::vector<CMatrix> blocks;
  for (int a : cg.indices) blocks.push_back(D[a]);
  return (kron(D[cg.p.ell], D[cg.q.ell]) - cg.C * direct_sum(blocks) * cg.C.adjoint()).norm();
}

}  // namespace

TEST_CASE("Clebsch-Gordan decompositions") {
  SUBCASE("tensor with the trivial representation") {
    for (GroupTag tag : {GroupTag::SU2, GroupTag::SO3}) {
      const CGDecomposition& cg = clebsch_gordan({1, tag}, {0, tag});
      CHECK(cg.indices == std::vector<int>{1});
      CHECK((cg.C - CMatrix::Identity(cg.C.rows(), cg.C.cols())).norm() < 1e-14);
    }
  }
  SUBCASE("index lists") {
    CHECK(clebsch_gordan({1, GroupTag::SU2}, {1, GroupTag::SU2}).indices == std::vector<int>{2, 0});
    CHECK(clebsch_gordan({1, GroupTag::SO3}, {1, GroupTag::SO3}).indices == std::vector<int>{2, 1, 0});
    CHECK(tensor_indices({4, GroupTag::SU2}, {1, GroupTag::SU2}) == std::vector<int>{5, 3});
    CHECK(tensor_indices({2, GroupTag::SO3}, {3, GroupTag::SO3}) == std::vector<int>{5, 4, 3, 2, 1});
  }
  SUBCASE("intertwiner residual, unitarity and dimension bookkeeping") {
    auto r = test::rng(16);
    for (GroupTag tag : {GroupTag::SU2, GroupTag::SO3}) {
      const int pmax = tag == GroupTag::SU2 ? 5 : 3;
      for (int p = 0; p <= pmax; ++p)
        for (int q = 0; q <= pmax; ++q) {
          const CGDecomposition& cg = clebsch_gordan({p, tag}, {q, tag});
          const int n = irrep_dim(tag, p) * irrep_dim(tag, q);
          int total = 0;
          for (std::size_t i = 0; i < cg.indices.size(); ++i) total += cg.block_dim(i);
          CHECK(total == n);
          CHECK((cg.C.adjoint() * cg.C - CMatrix::Identity(n, n)).norm() < 1e-11);
          for (int t = 0; t < 5; ++t) CHECK(intertwiner_residual(cg, random_element(tag, r)) < 1e-10);
        }
    }
  }
  SUBCASE("Condon-Shortley values") {
    // <1/2 1/2; 1/2 -1/2 | 0 0> = 1/sqrt2, <1/2 -1/2; 1/2 1/2 | 0 0> = -1/sqrt2
    const CGDecomposition& h = clebsch_gordan({1, GroupTag::SU2}, {1, GroupTag::SU2});
    CHECK(std::abs(h.C(1, 3) - 1 / std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(h.C(2, 3) + 1 / std::sqrt(2.0)) < 1e-14);
    // <1 1; 1 -1 | 1 0> = 1/sqrt2 and <1 0; 1 0 | 0 0> = -1/sqrt3
    const CGDecomposition& v = clebsch_gordan({1, GroupTag::SO3}, {1, GroupTag::SO3});
    CHECK(std::abs(v.C(2, 5 + 1) - 1 / std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(v.C(4, 8) + 1 / std::sqrt(3.0)) < 1e-14);
  }
  SUBCASE("first nonzero entry of each block is positive") {
    const CGDecomposition& cg = clebsch_gordan({3, GroupTag::SO3}, {2, GroupTag::SO3});
    for (int off : cg.offsets) {
      for (Eigen::Index i = 0; i < cg.C.rows(); ++i) {
        if (std::abs(cg.C(i, off)) > 1e-12) {
          CHECK(cg.C(i, off).real() > 0);
          CHECK(std::abs(cg.C(i, off).imag()) < 1e-15);
          break;
        }
      }
    }
  }
  SUBCASE("corruption hook breaks the intertwiner") {
    testing::set_cg_corruption(true);
    auto r = test::rng(17);
    const CGDecomposition& bad = clebsch_gordan({1, GroupTag::SO3}, {1, GroupTag::SO3});
    CHECK(intertwiner_residual(bad, random_element(GroupTag::SO3, r)) > 1e-3);
    testing::set_cg_corruption(false);
    const CGDecomposition& good = clebsch_gordan({1, GroupTag::SO3}, {1, GroupTag::SO3});
    CHECK(intertwiner_residual(good, random_element(GroupTag::SO3, r)) < 1e-10);
  }
}

TEST_CASE("subgroup projections") {
  for (GroupTag tag : {GroupTag::SU2, GroupTag::SO3}) {
    const SubgroupProjection p0 = subgroup_projection({0, tag});
    CHECK(p0.rank == 1);
    CHECK(std::abs(p0.P(0, 0) - 1.0) < 1e-15);
    for (int ell = 0; ell <= 8; ++ell) {
      const SubgroupProjection sp = subgroup_projection({ell, tag});
      CHECK((sp.P * sp.P - sp.P).norm() < 1e-11);
      CHECK((sp.P.adjoint() - sp.P).norm() < 1e-11);
      const int expected_rank = (tag == GroupTag::SO3 || ell % 2 == 0) ? 1 : 0;
      CHECK(sp.rank == expected_rank);

      // Closed form against a fine trapezoidal average over H.
      const int n = 720;
      const double period = tag == GroupTag::SU2 ? 4 * kPi : 2 * kPi;
      CMatrix avg = CMatrix::Zero(sp.P.rows(), sp.P.cols());
      for (int k = 0; k < n; ++k) avg += wigner(ell, rotation_z(period * k / n, tag));
      avg /= n;
      CHECK((avg - sp.P).norm() < 1e-12);

      const RMatrix Q = convenient_permutation({ell, tag});
      const RMatrix conv = Q * sp.P.real() * Q.transpose();
      for (int i = 0; i < conv.rows(); ++i) CHECK(conv(i, i) == (i < sp.rank ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("projection tensor identity") {
  for (GroupTag tag : {GroupTag::SU2, GroupTag::SO3})
    for (int s = 0; s <= 4; ++s)
      for (int d = 0; d <= 4; ++d) CHECK(projection_tensor_residual({s, tag}, {d, tag}) < 1e-10);
}

TEST_CASE("rows of P D are left H-invariant") {
  auto r = test::rng(18);
  for (GroupTag tag : {GroupTag::SU2, GroupTag::SO3}) {
    for (int t = 0; t < 20; ++t) {
      const GroupElement g = random_element(tag, r);
      const GroupElement h = rotation_z(test::uniform(r, 0, 4 * kPi), tag);
      for (int ell = 0; ell <= 6; ++ell) {
        const CMatrix P = subgroup_projection({ell, tag}).P;
        CHECK((P * wigner(ell, h * g) - P * wigner(ell, g)).norm() < 1e-10);
      }
    }
  }
}

TEST_CASE("coset homomorphism conditions") {
  auto r = test::rng(19);
  for (GroupTag tag : {GroupTag::SU2, GroupTag::SO3}) {
    const auto at_identity = verify_coset_homomorphism(GroupElement::identity(tag), 3);
    CHECK(at_identity.conjugation_residual < 1e-15);
    for (int t = 0; t < 5; ++t) {
      const auto rep = verify_coset_homomorphism(random_element(tag, r), 3);
      CHECK(rep.passes(1e-10));
    }
    // not unitary any more
    auto omega = coset_evaluation(random_element(tag, r), 6);
    for (auto& w : omega) w *= 1.1;
    CHECK(coset_homomorphism_residual(omega, tag).max_residual() > 1e-3);
  }
}

TEST_CASE("irreps are self-conjugate") {
  // conj(D) = J D J^-1 with J obtained by group averaging (Schur).
  auto r = test::rng(20);
  for (GroupTag tag : {GroupTag::SU2, GroupTag::SO3}) {
    for (int ell = 0; ell <= 4; ++ell) {
      const QuadratureRule rule = haar_quadrature(ell, tag);
      const int n = irrep_dim(tag, ell);
      const CMatrix X = CMatrix::Random(n, n);
      CMatrix J = CMatrix::Zero(n, n);
      for (std::size_t i = 0; i < rule.size(); ++i) {
        const CMatrix D = wigner(ell, rule.nodes()[i]);
        J += rule.weights()[i] * D.conjugate() * X * D.adjoint();
      }
      CHECK(J.norm() > 1e-3);
      const GroupElement h = random_element(tag, r);
      const CMatrix D = wigner(ell, h);
      CHECK((D.conjugate() * J - J * D).norm() < 1e-10);
    }
  }
}
