#include "bispec/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bispec/projection.hpp"
#include "bispec/wigner.hpp"

namespace bispec {

namespace {

constexpr double kPi = std::numbers::pi;

GroupElement pole_rotation(double theta, double phi) { return euler_element(phi, theta, 0.0, GroupTag::SO3); }

double wrap_phi(double phi) {
  double p = std::fmod(phi, 2 * kPi);
  if (p < 0) p += 2 * kPi;
  return p;
}

}  // namespace

SphereGrid::SphereGrid(int resolution) : resolution_(resolution) {
  if (resolution < 1) throw DomainError("sphere resolution must be at least 1");
  const int n = 2 * resolution;
  weights_.resize(n);
  for (int j = 0; j < n; ++j) {
    const double t = theta(j);
    double s = 0.0;
    for (int k = 1; k <= n / 2; ++k) s += std::cos(2 * k * t) / (4.0 * k * k - 1.0);
    // Fejer weight for sin(theta) d(theta) sums to 2; normalize over the grid.
    weights_[j] = (2.0 / n) * (1.0 - 2.0 * s) / 2.0 / n;
  }
}

double SphereGrid::theta(int j) const { return kPi * (2 * j + 1) / (4.0 * resolution_); }
double SphereGrid::phi(int k) const { return 2 * kPi * k / (2.0 * resolution_); }

Eigen::Vector3d SphereGrid::point(int j, int k) const {
  const double t = theta(j), p = phi(k);
  return {std::sin(t) * std::cos(p), std::sin(t) * std::sin(p), std::cos(t)};
}

SphereFunction::SphereFunction(int B) : resolution(B), values(static_cast<std::size_t>(4) * B * B, 0.0) {
  if (B < 1) throw DomainError("sphere resolution must be at least 1");
}

void SphereFunction::validate() const {
  if (resolution < 1) throw DomainError("sphere resolution must be at least 1");
  if (values.size() != static_cast<std::size_t>(4) * resolution * resolution)
    throw DomainError("sphere sample count does not match the resolution");
}

std::pair<double, double> spherical_angles(const Eigen::Vector3d& v) {
  const double r = v.norm();
  if (!(r > 0.0)) throw DomainError("direction must be nonzero");
  const double theta = std::acos(std::clamp(v.z() / r, -1.0, 1.0));
  return {theta, wrap_phi(std::atan2(v.y(), v.x()))};
}

CoefficientSet sphere_lift(const SphereFunction& s, int bandlimit) {
  s.validate();
  const SphereGrid grid = s.grid();
  CoefficientSet F(GroupTag::SO3, bandlimit);
  for (int j = 0; j < grid.n_theta(); ++j)
    for (int k = 0; k < grid.n_phi(); ++k) {
      const double ws = grid.weight(j) * s.at(j, k);
      if (ws == 0.0) continue;
      const std::vector<CMatrix> D = wigner_all(bandlimit, pole_rotation(grid.theta(j), grid.phi(k)));
      for (int ell = 0; ell <= bandlimit; ++ell)
        F[ell].row(ell) += ws * D[ell].col(ell).adjoint();
    }
  return F;
}

double evaluate_sphere(const CoefficientSet& F, const Eigen::Vector3d& v) {
  require_same_group(F.group, GroupTag::SO3);
  const auto [theta, phi] = spherical_angles(v);
  return evaluate(F, pole_rotation(theta, phi)).real();
}

SphereFunction sample_sphere(const CoefficientSet& F, int resolution, const GroupElement& x) {
  require_same_group(x.group(), GroupTag::SO3);
  SphereFunction s(resolution);
  const SphereGrid grid(resolution);
  const Eigen::Matrix3d R = x.rotation_matrix();
  for (int j = 0; j < grid.n_theta(); ++j)
    for (int k = 0; k < grid.n_phi(); ++k) s.at(j, k) = evaluate_sphere(F, R * grid.point(j, k));
  return s;
}

double interpolate(const SphereFunction& s, double theta, double phi) {
  const int B = s.resolution;
  const int n = 2 * B;
  // Row value at a possibly out-of-range theta index; rows past a pole are
  // the rows on the other side at phi + pi.
  auto row_value = [&](int j, double p) {
    if (j < 0) {
      j = -1 - j;
      p += kPi;
    } else if (j >= n) {
      j = 2 * n - 1 - j;
      p += kPi;
    }
    const double u = wrap_phi(p) / (2 * kPi) * n;
    const int k0 = static_cast<int>(std::floor(u)) % n;
    const int k1 = (k0 + 1) % n;
    const double t = u - std::floor(u);
    return (1 - t) * s.at(j, k0) + t * s.at(j, k1);
  };
  const double v = theta * n / kPi - 0.5;
  const int j0 = static_cast<int>(std::floor(v));
  const double t = v - j0;
  return (1 - t) * row_value(j0, phi) + t * row_value(j0 + 1, phi);
}

SphereFunction rotate_sphere(const SphereFunction& s, const GroupElement& x) {
  s.validate();
  require_same_group(x.group(), GroupTag::SO3);
  SphereFunction out(s.resolution);
  const SphereGrid grid = s.grid();
  const Eigen::Matrix3d R = x.rotation_matrix();
  for (int j = 0; j < grid.n_theta(); ++j)
    for (int k = 0; k < grid.n_phi(); ++k) {
      const auto [theta, phi] = spherical_angles(R * grid.point(j, k));
      out.at(j, k) = interpolate(s, theta, phi);
    }
  return out;
}

CoefficientSet random_sphere_coefficients(int bandlimit, std::uint64_t seed) {
  if (bandlimit < 0) throw DomainError("bandlimit must be nonnegative");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  CoefficientSet F(GroupTag::SO3, bandlimit);
  for (int ell = 0; ell <= bandlimit; ++ell)
    for (Eigen::Index b = 0; b < F[ell].cols(); ++b) {
      const double re = normal(rng);
      const double im = normal(rng);
      F[ell](ell, b) = Complex(re, im);
    }
  // Keep the real part of the expansion; exact on a grid resolving degree L.
  return sphere_lift(sample_sphere(F, bandlimit + 1), bandlimit);
}

HRankReport h_rank_check(const CoefficientSet& F, double tolerance) {
  HRankReport out;
  out.maximal = true;
  for (int ell = 0; ell <= F.bandlimit; ++ell) {
    Eigen::JacobiSVD<CMatrix> svd(F[ell]);
    const auto& sv = svd.singularValues();
    const double cutoff = tolerance * std::max(1.0, F[ell].norm());
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv[i] > cutoff) ++rank;
    const int prank = subgroup_projection(IrrepIndex{ell, F.group}).rank;
    out.ranks.push_back(rank);
    out.projection_ranks.push_back(prank);
    if (rank != prank) out.maximal = false;
  }
  return out;
}

}  // namespace bispec
