#pragma once

#include <span>
#include <vector>

#include "bispec/group.hpp"

namespace bispec {

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n);

/// Normalized Haar quadrature on SU(2) or SO(3).
///
/// Product rule in z-y-z Euler angles: 2L+2 uniform points in alpha and in
/// gamma (gamma spans [0, 4pi) for SU(2)), L+1 Gauss-Legendre points in
/// cos(beta). Integrates every product D^p_ij(g) conj(D^q_kl(g)) with
/// p, q <= L exactly.
class QuadratureRule {
 public:
  QuadratureRule(int bandlimit, GroupTag tag);

  int bandlimit() const { return bandlimit_; }
  GroupTag group() const { return tag_; }
  std::size_t size() const { return nodes_.size(); }

  std::span<const GroupElement> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  std::span<const EulerAngles> angles() const { return angles_; }

  /// Sum of w_i * values[i] in node order.
  template <typename T>
  T integrate(std::span<const T> values) const {
    T acc{};
    for (std::size_t i = 0; i < weights_.size(); ++i) acc += weights_[i] * values[i];
    return acc;
  }

 private:
  int bandlimit_;
  GroupTag tag_;
  std::vector<GroupElement> nodes_;
  std::vector<EulerAngles> angles_;
  std::vector<double> weights_;
};

QuadratureRule haar_quadrature(int bandlimit, GroupTag tag);

}  // namespace bispec
