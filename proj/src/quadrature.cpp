#include "bispec/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace bispec {

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre order must be positive");
  GaussLegendre gl;
  gl.nodes.assign(n, 0.0);
  gl.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = 0.0;
    for (int k = 1; k <= n; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
    }
    dp = n * (x * p0 - p1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.nodes[i] = -x;
    gl.nodes[n - 1 - i] = x;
    gl.weights[i] = w;
    gl.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) gl.nodes[n / 2] = 0.0;
  return gl;
}

QuadratureRule::QuadratureRule(int bandlimit, GroupTag tag) : bandlimit_(bandlimit), tag_(tag) {
  if (bandlimit < 0) throw DomainError("bandlimit must be nonnegative");
  const int n_angle = 2 * bandlimit + 2;
  const int n_beta = bandlimit + 1;
  const double two_pi = 2.0 * std::numbers::pi;
  const double gamma_period = tag == GroupTag::SU2 ? 2.0 * two_pi : two_pi;
  const GaussLegendre gl = gauss_legendre(n_beta);

  const std::size_t total = static_cast<std::size_t>(n_angle) * n_angle * n_beta;
  nodes_.reserve(total);
  angles_.reserve(total);
  weights_.reserve(total);
  const double w_angle = 1.0 / (static_cast<double>(n_angle) * n_angle);
  for (int ia = 0; ia < n_angle; ++ia) {
    const double alpha = two_pi * ia / n_angle;
    for (int ib = 0; ib < n_beta; ++ib) {
      // Ascending beta: cos(beta) descending.
      const double cb = gl.nodes[n_beta - 1 - ib];
      const double beta = std::acos(cb);
      const double wb = 0.5 * gl.weights[n_beta - 1 - ib];
      for (int ig = 0; ig < n_angle; ++ig) {
        const double gamma = gamma_period * ig / n_angle;
        angles_.push_back({alpha, beta, gamma});
        nodes_.push_back(euler_element(alpha, beta, gamma, tag));
        weights_.push_back(w_angle * wb);
      }
    }
  }
}

QuadratureRule haar_quadrature(int bandlimit, GroupTag tag) { return QuadratureRule(bandlimit, tag); }

}  // namespace bispec
