#include "bispec/group.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace bispec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double angle, double period) {
  double r = std::fmod(angle, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

Eigen::Quaterniond axis_quaternion(double angle, int axis) {
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  switch (axis) {
    case 0: return {c, s, 0.0, 0.0};
    case 1: return {c, 0.0, s, 0.0};
    default: return {c, 0.0, 0.0, s};
  }
}

GroupElement axis_rotation(double angle, int axis, GroupTag tag) {
  const Eigen::Quaterniond q = axis_quaternion(angle, axis);
  if (tag == GroupTag::SU2) return GroupElement::from_quaternion(q);
  return GroupElement::from_rotation(q.toRotationMatrix());
}

}  // namespace

std::string_view to_string(GroupTag tag) { return tag == GroupTag::SU2 ? "SU2" : "SO3"; }

GroupTag parse_group_tag(std::string_view text) {
  if (text == "SU2" || text == "su2") return GroupTag::SU2;
  if (text == "SO3" || text == "so3") return GroupTag::SO3;
  throw DomainError("unknown group '" + std::string(text) + "' (expected SU2 or SO3)");
}

TagMismatchError::TagMismatchError(GroupTag a, GroupTag b)
    : Error("group tag mismatch: " + std::string(to_string(a)) + " vs " +
            std::string(to_string(b))) {}

GroupElement GroupElement::identity(GroupTag tag) {
  return GroupElement(tag, Eigen::Quaterniond::Identity(), Eigen::Matrix3d::Identity());
}

GroupElement GroupElement::from_quaternion(const Eigen::Quaterniond& q) {
  const double n = q.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("quaternion must be nonzero and finite");
  return GroupElement(GroupTag::SU2, Eigen::Quaterniond(q.coeffs() / n),
                      Eigen::Matrix3d::Identity());
}

GroupElement GroupElement::from_rotation(const Eigen::Matrix3d& R) {
  const double orth = (R.transpose() * R - Eigen::Matrix3d::Identity()).norm();
  if (!(orth <= 1e-9) || !(std::abs(R.determinant() - 1.0) <= 1e-9))
    throw DomainError("matrix is not a proper rotation");
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(R, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d clean = svd.matrixU() * svd.matrixV().transpose();
  return GroupElement(GroupTag::SO3, Eigen::Quaterniond::Identity(), clean);
}

const Eigen::Quaterniond& GroupElement::quaternion() const {
  if (tag_ != GroupTag::SU2) throw TagMismatchError(GroupTag::SU2, tag_);
  return q_;
}

Eigen::Matrix3d GroupElement::rotation_matrix() const {
  return tag_ == GroupTag::SU2 ? q_.toRotationMatrix() : R_;
}

Eigen::Quaterniond GroupElement::covering_quaternion() const {
  if (tag_ == GroupTag::SU2) return q_;
  Eigen::Quaterniond q(R_);
  q.normalize();
  const Eigen::Vector4d c(q.w(), q.x(), q.y(), q.z());
  for (int i = 0; i < 4; ++i) {
    if (std::abs(c[i]) > 1e-14) {
      if (c[i] < 0.0) q.coeffs() = -q.coeffs();
      break;
    }
  }
  return q;
}

Eigen::Matrix2cd GroupElement::su2_matrix() const {
  const Eigen::Quaterniond q = covering_quaternion();
  const Complex a(q.w(), -q.z());
  const Complex b(q.y(), -q.x());
  Eigen::Matrix2cd U;
  U << a, -std::conj(b), b, std::conj(a);
  return U;
}

GroupElement GroupElement::inverse() const {
  if (tag_ == GroupTag::SU2) return GroupElement(tag_, q_.conjugate(), R_);
  return GroupElement(tag_, q_, R_.transpose());
}

GroupElement compose(const GroupElement& g1, const GroupElement& g2) {
  require_same_group(g1.group(), g2.group());
  if (g1.group() == GroupTag::SU2)
    return GroupElement::from_quaternion(g1.quaternion() * g2.quaternion());
  return GroupElement::from_rotation(g1.rotation_matrix() * g2.rotation_matrix());
}

GroupElement inverse(const GroupElement& g) { return g.inverse(); }

GroupElement operator*(const GroupElement& g1, const GroupElement& g2) { return compose(g1, g2); }

double group_distance(const GroupElement& g1, const GroupElement& g2) {
  require_same_group(g1.group(), g2.group());
  if (g1.group() == GroupTag::SU2) return (g1.su2_matrix() - g2.su2_matrix()).norm();
  return (g1.rotation_matrix() - g2.rotation_matrix()).norm();
}

GroupElement euler_element(double alpha, double beta, double gamma, GroupTag tag) {
  const Eigen::Quaterniond q =
      axis_quaternion(alpha, 2) * axis_quaternion(beta, 1) * axis_quaternion(gamma, 2);
  if (tag == GroupTag::SU2) return GroupElement::from_quaternion(q);
  return GroupElement::from_rotation(q.normalized().toRotationMatrix());
}

GroupElement from_euler(const EulerAngles& angles, GroupTag tag) {
  const double gamma_period = tag == GroupTag::SU2 ? 2.0 * kTwoPi : kTwoPi;
  if (!(angles.alpha >= 0.0 && angles.alpha < kTwoPi))
    throw DomainError("alpha must lie in [0, 2pi)");
  if (!(angles.beta >= 0.0 && angles.beta <= kPi)) throw DomainError("beta must lie in [0, pi]");
  if (!(angles.gamma >= 0.0 && angles.gamma < gamma_period))
    throw DomainError(tag == GroupTag::SU2 ? "gamma must lie in [0, 4pi)"
                                           : "gamma must lie in [0, 2pi)");
  return euler_element(angles.alpha, angles.beta, angles.gamma, tag);
}

EulerAngles to_euler(const GroupElement& g) {
  constexpr double kDegenerate = 1e-13;
  EulerAngles e;
  if (g.group() == GroupTag::SU2) {
    const Eigen::Matrix2cd U = g.su2_matrix();
    const Complex a = U(0, 0);
    const Complex b = U(1, 0);
    const double ca = std::abs(a);
    const double sb = std::abs(b);
    e.beta = 2.0 * std::atan2(sb, ca);
    if (sb < kDegenerate) {
      // alpha + gamma = -2 arg a (mod 4pi)
      e.beta = 0.0;
      double sum = wrap(-2.0 * std::arg(a), 2.0 * kTwoPi);
      if (sum >= kTwoPi) {
        e.alpha = wrap(sum - kTwoPi, kTwoPi);
        e.gamma = kTwoPi;
      } else {
        e.alpha = sum;
      }
    } else if (ca < kDegenerate) {
      // alpha - gamma = 2 arg b (mod 4pi)
      e.beta = kPi;
      double diff = wrap(2.0 * std::arg(b), 2.0 * kTwoPi);
      if (diff >= kTwoPi) {
        e.alpha = wrap(diff - kTwoPi, kTwoPi);
        e.gamma = kTwoPi;
      } else {
        e.alpha = diff;
      }
    } else {
      e.alpha = wrap(std::arg(b) - std::arg(a), kTwoPi);
      e.gamma = wrap(-2.0 * std::arg(a) - e.alpha, 2.0 * kTwoPi);
    }
    return e;
  }
  const Eigen::Matrix3d R = g.rotation_matrix();
  const double sb = std::hypot(R(0, 2), R(1, 2));
  e.beta = std::atan2(sb, R(2, 2));
  if (sb < kDegenerate) {
    if (R(2, 2) > 0.0) {
      e.beta = 0.0;
      e.alpha = wrap(std::atan2(R(1, 0), R(0, 0)), kTwoPi);
    } else {
      e.beta = kPi;
      e.alpha = wrap(std::atan2(-R(1, 0), -R(0, 0)), kTwoPi);
    }
    e.gamma = 0.0;
    return e;
  }
  e.alpha = wrap(std::atan2(R(1, 2), R(0, 2)), kTwoPi);
  e.gamma = wrap(std::atan2(R(2, 1), -R(2, 0)), kTwoPi);
  return e;
}

GroupElement rotation_z(double angle, GroupTag tag) { return axis_rotation(angle, 2, tag); }
GroupElement rotation_y(double angle, GroupTag tag) { return axis_rotation(angle, 1, tag); }
GroupElement rotation_x(double angle, GroupTag tag) { return axis_rotation(angle, 0, tag); }

GroupElement random_element(GroupTag tag, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::Quaterniond q;
  do {
    q = Eigen::Quaterniond(normal(rng), normal(rng), normal(rng), normal(rng));
  } while (q.norm() < 1e-8);
  q.normalize();
  if (tag == GroupTag::SU2) return GroupElement::from_quaternion(q);
  return GroupElement::from_rotation(q.toRotationMatrix());
}

}  // namespace bispec
