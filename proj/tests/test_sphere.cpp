#include "doctest.h"

#include "bispec/projection.hpp"
#include "bispec/sphere.hpp"
#include "bispec/wigner.hpp"
#include "test_util.hpp"

using namespace bispec;
using bispec::test::kPi;

namespace {

template <typename Fn>
SphereFunction tabulate(int B, Fn fn) {
  SphereFunction s(B);
  const SphereGrid grid(B);
  for (int j = 0; j < grid.n_theta(); ++j)
    for (int k = 0; k < grid.n_phi(); ++k) s.at(j, k) = fn(grid.theta(j), grid.phi(k));
  return s;
}

double projection_defect(const CoefficientSet& F) {
  double r = 0.0;
  for (int ell = 0; ell <= F.bandlimit; ++ell) {
    const CMatrix& P = subgroup_projection(IrrepIndex{ell, GroupTag::SO3}).P;
    r = std::max(r, (P * F[ell] - F[ell]).norm());
  }
  return r;
}

}  // namespace

TEST_CASE("sphere grid weights") {
  for (int B : {1, 2, 5, 16}) {
    const SphereGrid grid(B);
    double sum = 0.0;
    for (int j = 0; j < grid.n_theta(); ++j) {
      CHECK(grid.weight(j) > 0.0);
      sum += grid.weight(j) * grid.n_phi();
    }
    CHECK(std::abs(sum - 1.0) < 1e-13);

    // Mean of cos^k over the sphere is 1/(k+1) for even k.
    for (int k = 0; k <= 2 * B - 1; ++k) {
      double acc = 0.0;
      for (int j = 0; j < grid.n_theta(); ++j) acc += grid.weight(j) * grid.n_phi() * std::pow(std::cos(grid.theta(j)), k);
      CHECK(std::abs(acc - (k % 2 == 0 ? 1.0 / (k + 1) : 0.0)) < 1e-13);
    }
  }
}

TEST_CASE("lift of a constant sphere function") {
  const SphereFunction s = tabulate(4, [](double, double) { return 2.5; });
  const CoefficientSet F = sphere_lift(s, 3);
  CHECK(std::abs(F[0](0, 0) - 2.5) < 1e-12);
  for (int ell = 1; ell <= 3; ++ell) CHECK(F[ell].norm() < 1e-12);
}

TEST_CASE("lift of a degree-2 zonal harmonic") {
  // s = 3 cos^2 - 1; its mean against d^2_00 = (3 cos^2 - 1) / 2 is 2/5.
  const SphereFunction s = tabulate(4, [](double t, double) { return 3 * std::cos(t) * std::cos(t) - 1; });
  const CoefficientSet F = sphere_lift(s, 3);
  for (int ell : {0, 1, 3}) CHECK(F[ell].norm() < 1e-12);
  CHECK(std::abs(F[2](2, 2) - 0.4) < 1e-12);
  CHECK(std::abs(F[2].norm() - 0.4) < 1e-12);
  const HRankReport ranks = h_rank_check(F);
  CHECK(ranks.ranks[2] == 1);
  CHECK_FALSE(ranks.maximal);
}

TEST_CASE("lift of a non-zonal degree-2 harmonic") {
  // sin^2 cos(2 phi) lives in m = +-2 only.
  const SphereFunction s = tabulate(3, [](double t, double p) { return std::sin(t) * std::sin(t) * std::cos(2 * p); });
  const CoefficientSet F = sphere_lift(s, 2);
  CHECK(F[0].norm() < 1e-12);
  CHECK(F[1].norm() < 1e-12);
  CHECK(std::abs(F[2](2, 0)) > 0.1);
  CHECK(std::abs(F[2](2, 4)) > 0.1);
  CHECK(std::abs(F[2](2, 2)) < 1e-12);
  CHECK(h_rank_check(F).ranks[2] == 1);
}

TEST_CASE("lift is invariant under the stabilizer on the right") {
  const CoefficientSet F = random_sphere_coefficients(4, 31);
  CHECK(projection_defect(F) < 1e-12);
  // f(R) = s(R e_z) so f(R h) = f(R) for h about z.
  auto r = test::rng(32);
  const GroupElement g = random_element(GroupTag::SO3, r);
  const GroupElement h = rotation_z(1.234, GroupTag::SO3);
  CHECK(std::abs(evaluate(F, g * h) - evaluate(F, g)) < 1e-10);
  CHECK(std::abs(evaluate(F, g).imag()) < 1e-10);
}

TEST_CASE("sampling and lifting are inverse on bandlimited functions") {
  const int L = 5;
  const CoefficientSet F = random_sphere_coefficients(L, 33);
  const SphereFunction s = sample_sphere(F, L + 1);
  CHECK(max_difference(sphere_lift(s, L), F) < 1e-10);
  // Samples match direct evaluation at grid points.
  const SphereGrid grid(L + 1);
  CHECK(std::abs(s.at(3, 5) - evaluate_sphere(F, grid.point(3, 5))) < 1e-14);
}

TEST_CASE("lift commutes with rotation") {
  auto r = test::rng(34);
  const int L = 4;
  const CoefficientSet F = random_sphere_coefficients(L, 35);
  for (int t = 0; t < 5; ++t) {
    const GroupElement x = random_element(GroupTag::SO3, r);
    const CoefficientSet lifted = sphere_lift(sample_sphere(F, L + 1, x), L);
    CHECK(max_difference(lifted, translate(F, x)) < 1e-8);
  }
}

TEST_CASE("bilinear rotation approximates the exact rotation") {
  auto r = test::rng(36);
  const int L = 3;
  const CoefficientSet F = random_sphere_coefficients(L, 37);
  const GroupElement x = random_element(GroupTag::SO3, r);
  double previous = 1e300;
  for (int B : {16, 32, 64}) {
    const SphereFunction rotated = rotate_sphere(sample_sphere(F, B), x);
    const double err = max_relative_difference(translate(F, x), sphere_lift(rotated, L));
    CAPTURE(B);
    CHECK(err < 5e-2);
    CHECK(err < previous);
    previous = err;
  }
}

TEST_CASE("interpolation") {
  const int L = 3;
  const CoefficientSet F = random_sphere_coefficients(L, 38);
  const SphereFunction s = sample_sphere(F, 8);
  const SphereGrid grid(8);
  CHECK(std::abs(interpolate(s, grid.theta(4), grid.phi(7)) - s.at(4, 7)) < 1e-14);
  // Rows past a pole are read at phi + pi.
  CHECK(std::abs(interpolate(s, 1e-9, 0.3) - interpolate(s, 1e-9, 0.3 + kPi)) < 1e-6);
  CHECK(std::abs(interpolate(s, kPi - 1e-9, 1.0) - interpolate(s, kPi - 1e-9, 1.0 + kPi)) < 1e-6);
  double scale = 0.0;
  for (double v : s.values) scale = std::max(scale, std::abs(v));
  CHECK(std::abs(interpolate(s, 0.0, 0.0) - evaluate_sphere(F, Eigen::Vector3d::UnitZ())) < 5e-2 * scale);
  const GroupElement e = GroupElement::identity(GroupTag::SO3);
  const SphereFunction same = rotate_sphere(s, e);
  for (std::size_t i = 0; i < s.values.size(); ++i) CHECK(std::abs(same.values[i] - s.values[i]) < 1e-12);
}

TEST_CASE("maximal H-rank") {
  const CoefficientSet F = random_sphere_coefficients(5, 39);
  const HRankReport rep = h_rank_check(F);
  CHECK(rep.maximal);
  for (int ell = 0; ell <= 5; ++ell) CHECK(rep.ranks[ell] == 1);
  CoefficientSet G = F;
  G[3].setZero();
  CHECK_FALSE(h_rank_check(G).maximal);
}

TEST_CASE("left-invariant functions expand in the rows of P D") {
  // g -> s(g^{-1} e_z) is invariant under g -> h g, so its coefficients
  // lie in the span of the nonzero rows of P_ell D_ell: F = F P.
  const int L = 4;
  const CoefficientSet S = random_sphere_coefficients(L, 40);
  const auto rule = std::make_shared<const QuadratureRule>(L, GroupTag::SO3);
  SampledFunction f{rule, {}};
  for (const GroupElement& g : rule->nodes())
    f.values.push_back(evaluate_sphere(S, g.inverse().rotation_matrix() * Eigen::Vector3d::UnitZ()));
  const CoefficientSet F = fourier_forward(f, L);
  double residual = 0.0;
  for (int ell = 0; ell <= L; ++ell) {
    const CMatrix& P = subgroup_projection(IrrepIndex{ell, GroupTag::SO3}).P;
    residual = std::max(residual, (F[ell] - F[ell] * P).norm());
    CHECK(h_rank_check(F).ranks[ell] <= 1);
  }
  CHECK(residual < 1e-9);
  CHECK(max_imaginary_part(F) < 1e-10);
}

TEST_CASE("sphere input validation") {
  SphereFunction s(2);
  s.values.pop_back();
  CHECK_THROWS_AS(sphere_lift(s, 1), DomainError);
  CHECK_THROWS_AS(SphereGrid(0), DomainError);
  CHECK_THROWS_AS(spherical_angles(Eigen::Vector3d::Zero()), DomainError);
}
