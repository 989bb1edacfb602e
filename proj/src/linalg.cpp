#include "bispec/linalg.hpp"

#include <cmath>

namespace bispec {

namespace {

constexpr double kHermitianTolerance = 1e-10;
constexpr double kConditionLimit = 1e8;

void require_hermitian(const CMatrix& H) {
  if (H.rows() != H.cols()) throw DomainError("matrix must be square");
  const double scale = std::max(1.0, H.norm());
  if ((H - H.adjoint()).norm() > kHermitianTolerance * scale) throw DomainError("matrix is not Hermitian");
}

bool is_real(const CMatrix& H) { return H.imag().norm() <= 1e-14 * std::max(1.0, H.norm()); }

// Eigen-decomposition of the Hermitian part; real arithmetic for real input
// so that eigenvectors inside degenerate eigenspaces stay real.
struct Eigensystem {
  Eigen::VectorXd values;  // ascending
  CMatrix vectors;
};

Eigensystem hermitian_eigensystem(const CMatrix& H) {
  const CMatrix sym = 0.5 * (H + H.adjoint());
  if (is_real(sym)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym.real());
    return {es.eigenvalues(), es.eigenvectors().cast<Complex>()};
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(sym);
  return {es.eigenvalues(), es.eigenvectors()};
}

CMatrix recompose(const Eigensystem& es, const Eigen::VectorXd& roots) {
  return es.vectors * roots.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

}  // namespace

CMatrix positive_sqrt(const CMatrix& H) {
  require_hermitian(H);
  if (H.size() == 0) return H;
  const Eigensystem es = hermitian_eigensystem(H);
  const double floor = -kHermitianTolerance * std::max(1.0, H.norm());
  Eigen::VectorXd roots(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values[i] < floor) throw NotPsdError("matrix has a negative eigenvalue " + std::to_string(es.values[i]));
    roots[i] = std::sqrt(std::max(es.values[i], 0.0));
  }
  return recompose(es, roots);
}

CMatrix signed_sqrt(const CMatrix& H, double target_det) {
  require_hermitian(H);
  const Eigensystem es = hermitian_eigensystem(H);
  const Eigen::Index n = es.values.size();
  if (n == 0) throw DomainError("empty matrix");
  const double top = es.values[n - 1];
  if (!(es.values[0] > 0.0) || es.values[0] < top / (kConditionLimit * kConditionLimit))
    throw SingularMatrixError("signed_sqrt needs a positive definite matrix");
  Eigen::VectorXd roots = es.values.cwiseSqrt();
  const double magnitude = roots.prod();
  if (!(std::abs(std::abs(target_det) - magnitude) <= 1e-6 * magnitude))
    throw DomainError("target determinant " + std::to_string(target_det) + " is unattainable; |det| must be " +
                      std::to_string(magnitude));
  if (target_det < 0) roots[0] = -roots[0];
  return recompose(es, roots);
}

PolarDecomposition polar_decompose(const CMatrix& A) {
  if (A.rows() != A.cols() || A.size() == 0) throw DomainError("polar decomposition needs a square matrix");
  Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  if (!(s[s.size() - 1] > 0.0) || s[0] / s[s.size() - 1] > kConditionLimit)
    throw SingularMatrixError("polar decomposition of an ill-conditioned matrix");
  const CMatrix& W = svd.matrixU();
  const CMatrix& V = svd.matrixV();
  return {W * s.cast<Complex>().asDiagonal() * W.adjoint(), W * V.adjoint()};
}

CMatrix so3_vector_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  CMatrix U(3, 3);
  U << -r, r * i, 0.0,  //
      0.0, 0.0, 1.0,    //
      r, r * i, 0.0;
  return U;
}

Eigen::Matrix3d nearest_rotation(const Eigen::Matrix3d& M) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d S = Eigen::Matrix3d::Identity();
  if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0) S(2, 2) = -1.0;
  return svd.matrixU() * S * svd.matrixV().transpose();
}

}  // namespace bispec
