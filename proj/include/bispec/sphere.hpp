#pragma once

#include <cstdint>
#include <vector>

#include "bispec/harmonic.hpp"

namespace bispec {

/// Equiangular (theta, phi) grid with 2B x 2B samples.
///
/// theta_j = pi (2j + 1) / (4B), phi_k = 2 pi k / (2B). The theta weights are
/// Fejer's first rule for the measure sin(theta) d(theta), so products of
/// spherical harmonics of degree <= B - 1 integrate exactly.
class SphereGrid {
 public:
  explicit SphereGrid(int resolution);

  int resolution() const { return resolution_; }
  int n_theta() const { return 2 * resolution_; }
  int n_phi() const { return 2 * resolution_; }
  std::size_t size() const { return static_cast<std::size_t>(n_theta()) * n_phi(); }

  double theta(int j) const;
  double phi(int k) const;
  /// Weight of a sample in row j; all weights sum to 1.
  double weight(int j) const { return weights_[j]; }
  Eigen::Vector3d point(int j, int k) const;

 private:
  int resolution_;
  std::vector<double> weights_;
};

/// Real samples on a SphereGrid, theta-major (index j * n_phi + k).
struct SphereFunction {
  int resolution = 0;
  std::vector<double> values;

  SphereFunction() = default;
  explicit SphereFunction(int B);

  SphereGrid grid() const { return SphereGrid(resolution); }
  double& at(int j, int k) { return values.at(static_cast<std::size_t>(j) * 2 * resolution + k); }
  double at(int j, int k) const { return values.at(static_cast<std::size_t>(j) * 2 * resolution + k); }

  /// Throws DomainError on a bad resolution or sample count.
  void validate() const;
};

/// Colatitude and longitude of a nonzero vector, phi in [0, 2pi).
std::pair<double, double> spherical_angles(const Eigen::Vector3d& v);

/// SO(3) coefficients of the north-pole lift f(R) = s(R e_z). The lift is
/// invariant under R -> R h for rotations h about z, so P_ell F(ell) = F(ell):
/// only the m = 0 row is nonzero.
CoefficientSet sphere_lift(const SphereFunction& s, int bandlimit);

/// Value at v of the sphere function whose lift has coefficients F
/// (F must satisfy P F = F).
double evaluate_sphere(const CoefficientSet& F, const Eigen::Vector3d& v);

/// Samples of v -> s(x v) where s is the expansion with lift coefficients F.
SphereFunction sample_sphere(const CoefficientSet& F, int resolution,
                             const GroupElement& x = GroupElement::identity(GroupTag::SO3));

/// v -> s(x v) on the same grid by bilinear interpolation. Its lift is
/// approximately translate(sphere_lift(s), x).
SphereFunction rotate_sphere(const SphereFunction& s, const GroupElement& x);

/// Bilinear interpolation of the samples at an arbitrary direction.
double interpolate(const SphereFunction& s, double theta, double phi);

/// Lift coefficients of a seeded random real expansion of degree <= L. Each
/// degree's row has unit-scale Gaussian entries.
CoefficientSet random_sphere_coefficients(int bandlimit, std::uint64_t seed);

struct HRankReport {
  std::vector<int> ranks;
  std::vector<int> projection_ranks;
  bool maximal = false;
};

/// rank F(ell) against rank P_ell, with singular values below
/// tolerance * max(1, ||F||) treated as zero.
HRankReport h_rank_check(const CoefficientSet& F, double tolerance = 1e-9);

}  // namespace bispec
