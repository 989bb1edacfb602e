#include "bispec/wigner.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace bispec {

namespace {

constexpr int kMaxFactorial = 512;

const std::array<double, kMaxFactorial + 1>& log_factorials() {
  static const auto table = [] {
    std::array<double, kMaxFactorial + 1> t{};
    for (int n = 0; n <= kMaxFactorial; ++n) t[n] = std::lgamma(n + 1.0);
    return t;
  }();
  return table;
}

double log_fact(int n) { return log_factorials().at(static_cast<std::size_t>(n)); }

}  // namespace

double wigner_d_direct(int two_j, int two_m_row, int two_m_col, double cos_half, double sin_half) {
  if (std::abs(two_m_row) > two_j || std::abs(two_m_col) > two_j) return 0.0;
  if ((two_j - two_m_row) % 2 != 0 || (two_j - two_m_col) % 2 != 0) return 0.0;
  const int jpr = (two_j + two_m_row) / 2;  // j + m'
  const int jmr = (two_j - two_m_row) / 2;  // j - m'
  const int jpc = (two_j + two_m_col) / 2;  // j + m
  const int jmc = (two_j - two_m_col) / 2;  // j - m
  const int shift = (two_m_col - two_m_row) / 2;  // m - m'
  const double log_pref = 0.5 * (log_fact(jpr) + log_fact(jmr) + log_fact(jpc) + log_fact(jmc));
  const int k_lo = std::max(0, shift);
  const int k_hi = std::min(jpc, jmr);
  double sum = 0.0;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double log_term =
        log_pref - log_fact(jpc - k) - log_fact(k) - log_fact(jmr - k) - log_fact(k - shift);
    const int pow_c = two_j - 2 * k + shift;
    const int pow_s = 2 * k - shift;
    double term = std::exp(log_term) * std::pow(cos_half, pow_c) * std::pow(sin_half, pow_s);
    if ((k - shift) % 2 != 0) term = -term;
    sum += term;
  }
  return sum;
}

std::vector<RMatrix> wigner_d_table(int two_j_max, double cos_half, double sin_half,
                                    bool integer_spins_only) {
  std::vector<RMatrix> d(two_j_max + 1);
  for (int tj = 0; tj <= two_j_max; ++tj) d[tj] = RMatrix::Zero(tj + 1, tj + 1);
  const double cos_beta = cos_half * cos_half - sin_half * sin_half;
  // Spins j <= 2 (which includes ell <= 2 for both groups) use direct sums.
  constexpr int kDirectTwoJ = 4;

  for (int tmr = -two_j_max; tmr <= two_j_max; ++tmr) {
    for (int tmc = -two_j_max; tmc <= two_j_max; ++tmc) {
      if ((tmr - tmc) % 2 != 0) continue;
      if (integer_spins_only && tmr % 2 != 0) continue;
      const int tj0 = std::max(std::abs(tmr), std::abs(tmc));
      double prev2 = 0.0;  // d^{j-2}
      double prev1 = 0.0;  // d^{j-1}
      for (int tj = tj0; tj <= two_j_max; tj += 2) {
        double value;
        if (tj <= tj0 + 2 || tj <= kDirectTwoJ) {
          value = wigner_d_direct(tj, tmr, tmc, cos_half, sin_half);
        } else {
          const double j = 0.5 * tj;
          const double m_r = 0.5 * tmr;
          const double m_c = 0.5 * tmc;
          const double jm1 = j - 1.0;
          const double pref = j * (2.0 * j - 1.0) / std::sqrt((j * j - m_c * m_c) * (j * j - m_r * m_r));
          const double a = (cos_beta - m_r * m_c / (j * jm1)) * prev1;
          const double b = std::sqrt((jm1 * jm1 - m_c * m_c) * (jm1 * jm1 - m_r * m_r)) /
                           (jm1 * (2.0 * j - 1.0)) * prev2;
          value = pref * (a - b);
        }
        const int row = (tj - tmr) / 2;
        const int col = (tj - tmc) / 2;
        d[tj](row, col) = value;
        prev2 = prev1;
        prev1 = value;
      }
    }
  }
  return d;
}

std::vector<CMatrix> wigner_all(int bandlimit, const GroupElement& g) {
  if (bandlimit < 0) throw DomainError("bandlimit must be nonnegative");
  const GroupTag tag = g.group();
  const Eigen::Matrix2cd U = g.su2_matrix();
  const Complex a = U(0, 0);
  const Complex b = U(1, 0);
  const double ca = std::abs(a);
  const double sb = std::abs(b);
  const double phase_a = ca > 0.0 ? std::arg(a) : 0.0;
  const double phase_b = sb > 0.0 ? std::arg(b) : 0.0;

  const int two_j_max = tag == GroupTag::SU2 ? bandlimit : 2 * bandlimit;
  const std::vector<RMatrix> d = wigner_d_table(two_j_max, ca, sb, tag == GroupTag::SO3);

  std::vector<CMatrix> out;
  out.reserve(bandlimit + 1);
  for (int ell = 0; ell <= bandlimit; ++ell) {
    const int tj = IrrepIndex{ell, tag}.two_j();
    const int n = tj + 1;
    CMatrix D(n, n);
    for (int r = 0; r < n; ++r) {
      const int tmr = tj - 2 * r;
      for (int c = 0; c < n; ++c) {
        const int tmc = tj - 2 * c;
        // exp(-i m' alpha - i m gamma) = exp(i((m'+m) arg a - (m'-m) arg b))
        const double phase = 0.5 * ((tmr + tmc) * phase_a - (tmr - tmc) * phase_b);
        D(r, c) = d[tj](r, c) * Complex(std::cos(phase), std::sin(phase));
      }
    }
    out.push_back(std::move(D));
  }
  return out;
}

CMatrix wigner(const IrrepIndex& index, const GroupElement& g) {
  require_same_group(index.group, g.group());
  return wigner_all(index.ell, g).back();
}

CMatrix wigner(int ell, const GroupElement& g) { return wigner({ell, g.group()}, g); }

AngularMomentum angular_momentum(int two_j) {
  const int n = two_j + 1;
  AngularMomentum J{RMatrix::Zero(n, n), RMatrix::Zero(n, n), RMatrix::Zero(n, n)};
  const double j = 0.5 * two_j;
  for (int i = 0; i < n; ++i) {
    const double m = j - i;
    J.jz(i, i) = m;
    if (i > 0) J.j_plus(i - 1, i) = std::sqrt((j - m) * (j + m + 1.0));
  }
  J.j_minus = J.j_plus.transpose();
  return J;
}

}  // namespace bispec
