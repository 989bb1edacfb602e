#pragma once

#include <array>
#include <random>

#include <Eigen/Geometry>

#include "bispec/types.hpp"

namespace bispec {

/// A point of SU(2) (unit quaternion) or SO(3) (rotation matrix).
///
/// SU(2) quaternions q = (w, x, y, z) correspond to the 2x2 matrix
/// w I - i (x sx + y sy + z sz), so the Hamilton product is the matrix
/// product. The covering map to SO(3) is the usual q v q^* rotation.
class GroupElement {
 public:
  static GroupElement identity(GroupTag tag);
  /// Normalizes q; throws DomainError on a zero quaternion.
  static GroupElement from_quaternion(const Eigen::Quaterniond& q);
  /// Throws DomainError unless R is orthogonal with det +1 within 1e-9;
  /// the stored matrix is re-orthonormalized.
  static GroupElement from_rotation(const Eigen::Matrix3d& R);

  GroupTag group() const { return tag_; }

  /// SU(2) only.
  const Eigen::Quaterniond& quaternion() const;
  /// The rotation in SO(3); for SU(2) this is the image under the covering map.
  Eigen::Matrix3d rotation_matrix() const;

  /// A unit quaternion covering this element. For SO(3) the sign is fixed by
  /// making the first nonzero component of (w, x, y, z) positive.
  Eigen::Quaterniond covering_quaternion() const;

  /// The 2x2 special unitary matrix [[a, -b*], [b, a*]] of the covering
  /// quaternion, a = w - i z, b = y - i x.
  Eigen::Matrix2cd su2_matrix() const;

  GroupElement inverse() const;

 private:
  GroupElement(GroupTag tag, const Eigen::Quaterniond& q, const Eigen::Matrix3d& R)
      : tag_(tag), q_(q), R_(R) {}

  GroupTag tag_;
  Eigen::Quaterniond q_;  // SU2
  Eigen::Matrix3d R_;     // SO3
};

/// Group product g1 * g2. Throws TagMismatchError on mixed groups.
GroupElement compose(const GroupElement& g1, const GroupElement& g2);
GroupElement inverse(const GroupElement& g);
GroupElement operator*(const GroupElement& g1, const GroupElement& g2);

/// Distance used for identifying elements: Frobenius distance of SU(2)
/// matrices, or of rotation matrices for SO(3).
double group_distance(const GroupElement& g1, const GroupElement& g2);

/// z-y-z Euler angles. alpha in [0, 2pi), beta in [0, pi], gamma in [0, 4pi)
/// for SU(2) and [0, 2pi) for SO(3).
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// g = Rz(alpha) Ry(beta) Rz(gamma). Throws DomainError if an angle is out of range.
GroupElement from_euler(const EulerAngles& angles, GroupTag tag);

/// Inverse of from_euler. At beta = 0 or pi the canonical answer has
/// gamma = 0; for SU(2) elements that need it, gamma = 2pi instead.
EulerAngles to_euler(const GroupElement& g);

/// Same matrix product as from_euler without range checks (any real angles).
GroupElement euler_element(double alpha, double beta, double gamma, GroupTag tag);

/// Rotation by angle about the z axis (an element of the circle subgroup H).
GroupElement rotation_z(double angle, GroupTag tag);
GroupElement rotation_y(double angle, GroupTag tag);
GroupElement rotation_x(double angle, GroupTag tag);

/// Haar-random element.
GroupElement random_element(GroupTag tag, std::mt19937_64& rng);

}  // namespace bispec
