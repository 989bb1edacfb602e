#include "bispec/clebsch_gordan.hpp"

#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "bispec/wigner.hpp"

namespace bispec {

namespace {

std::atomic<bool> g_corrupt{false};

struct Cache {
  std::mutex mutex;
  std::map<std::tuple<int, int, int>, std::unique_ptr<const CGDecomposition>> table;
};

Cache& cache() {
  static Cache c;
  return c;
}

RMatrix kron_real(const RMatrix& a, const RMatrix& b) {
  RMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix direct_sum(const std::vector<CMatrix>& blocks) {
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  CMatrix out = CMatrix::Zero(rows, cols);
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  for (const auto& b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

std::vector<int> tensor_indices(const IrrepIndex& p, const IrrepIndex& q) {
  require_same_group(p.group, q.group);
  const int step = p.group == GroupTag::SU2 ? 2 : 1;
  std::vector<int> out;
  for (int a = p.ell + q.ell; a >= std::abs(p.ell - q.ell); a -= step) out.push_back(a);
  return out;
}

CGDecomposition build_clebsch_gordan(const IrrepIndex& p, const IrrepIndex& q) {
  require_same_group(p.group, q.group);
  const GroupTag tag = p.group;
  const int dp = p.dim();
  const int dq = q.dim();
  const int n = dp * dq;

  const AngularMomentum Jp = angular_momentum(p.two_j());
  const AngularMomentum Jq = angular_momentum(q.two_j());
  const RMatrix Ip = RMatrix::Identity(dp, dp);
  const RMatrix Iq = RMatrix::Identity(dq, dq);
  const RMatrix raise = kron_real(Jp.j_plus, Iq) + kron_real(Ip, Jq.j_plus);
  const RMatrix lower = kron_real(Jp.j_minus, Iq) + kron_real(Ip, Jq.j_minus);

  // Doubled total weight of each tensor basis vector.
  std::vector<int> weight(n);
  for (int i1 = 0; i1 < dp; ++i1)
    for (int i2 = 0; i2 < dq; ++i2)
      weight[i1 * dq + i2] = (p.two_j() - 2 * i1) + (q.two_j() - 2 * i2);

  CGDecomposition out;
  out.p = p;
  out.q = q;
  out.indices = tensor_indices(p, q);
  out.C = CMatrix::Zero(n, n);

  int col = 0;
  for (int label : out.indices) {
    const IrrepIndex block{label, tag};
    const int tj = block.two_j();
    out.offsets.push_back(col);

    std::vector<int> sub;
    for (int i = 0; i < n; ++i)
      if (weight[i] == tj) sub.push_back(i);
    RMatrix restricted(n, static_cast<Eigen::Index>(sub.size()));
    for (std::size_t k = 0; k < sub.size(); ++k) restricted.col(k) = raise.col(sub[k]);

    // Highest weight: the (one-dimensional) null space of the raising operator.
    Eigen::JacobiSVD<RMatrix> svd(restricted, Eigen::ComputeFullV);
    const Eigen::VectorXd null = svd.matrixV().col(svd.matrixV().cols() - 1);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (std::size_t k = 0; k < sub.size(); ++k) v[sub[k]] = null[k];
    v.normalize();
    for (int i = 0; i < n; ++i) {
      if (std::abs(v[i]) > 1e-12) {
        if (v[i] < 0.0) v = -v;
        break;
      }
    }

    for (int k = 0; k <= tj; ++k) {
      out.C.col(col + k) = v.cast<Complex>();
      if (k < tj) {
        v = lower * v;
        v.normalize();
      }
    }
    col += tj + 1;
  }

  if (testing::cg_corruption_enabled() && n > 1) out.C.col(1) = -out.C.col(1);
  return out;
}

const CGDecomposition& clebsch_gordan(const IrrepIndex& p, const IrrepIndex& q) {
  require_same_group(p.group, q.group);
  auto& c = cache();
  const auto key = std::make_tuple(static_cast<int>(p.group), p.ell, q.ell);
  std::lock_guard<std::mutex> lock(c.mutex);
  auto it = c.table.find(key);
  if (it == c.table.end()) {
    auto built = std::make_unique<const CGDecomposition>(build_clebsch_gordan(p, q));
    it = c.table.emplace(key, std::move(built)).first;
  }
  return *it->second;
}

namespace testing {

void set_cg_corruption(bool enabled) {
  auto& c = cache();
  std::lock_guard<std::mutex> lock(c.mutex);
  g_corrupt = enabled;
  c.table.clear();
}

bool cg_corruption_enabled() { return g_corrupt; }

}  // namespace testing

}  // namespace bispec
