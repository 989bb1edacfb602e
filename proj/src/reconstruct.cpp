#include "bispec/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bispec/clebsch_gordan.hpp"
#include "bispec/linalg.hpp"
#include "bispec/wigner.hpp"

namespace bispec {

namespace {

constexpr double kConditionLimit = kSingularConditionLimit;
constexpr double kAlignmentTolerance = 1e-3;

double checked_condition(const CMatrix& A, int ell) {
  const double c = condition_number(A);
  if (!(c <= kConditionLimit))
    throw SingularMatrixError("recovered coefficient F(" + std::to_string(ell) + ") is singular (condition number " +
                                  std::to_string(c) + ")",
                              ell);
  return c;
}

using FirstRoot = CMatrix (*)(const BispectrumDescriptor&, const CMatrix&);

ReconstructionReport recursive_reconstruction(const BispectrumDescriptor& d, FirstRoot first_root) {
  d.validate();
  const int L = d.bandlimit;
  ReconstructionReport out{CoefficientSet(d.group, L), std::nullopt, {}, 0.0};

  const Complex a00 = d.at(0, 0)(0, 0);
  double scale = 0.0;
  for (const CMatrix& A : d.entries) scale = std::max(scale, A.norm());
  if (!(std::abs(a00) > 1e-14 * scale)) throw ZeroMeanError("A(0,0) vanishes; the function has zero mean");
  const double f0 = std::cbrt(a00.real());
  out.recovered[0](0, 0) = f0;
  out.condition_numbers.push_back(1.0);

  if (L >= 1) {
    out.recovered[1] = first_root(d, d.at(1, 0) / f0);
    out.condition_numbers.push_back(checked_condition(out.recovered[1], 1));
  }

  for (int ell = 2; ell <= L; ++ell) {
    const CGDecomposition& cg = clebsch_gordan(IrrepIndex{ell - 1, d.group}, IrrepIndex{1, d.group});
    const CMatrix K = kron(out.recovered[ell - 1], out.recovered[1]);
    const CMatrix M = cg.C.adjoint() * K.partialPivLu().solve(d.at(ell - 1, 1)) * cg.C;
    const int n = irrep_dim(d.group, ell);
    out.recovered[ell] = M.topLeftCorner(n, n).adjoint();
    out.condition_numbers.push_back(checked_condition(out.recovered[ell], ell));
  }

  out.descriptor_residual = descriptor_relative_difference(d, build_descriptor(out.recovered));
  return out;
}

CMatrix su2_first_root(const BispectrumDescriptor&, const CMatrix& H) { return positive_sqrt(H); }

CMatrix so3_first_root(const BispectrumDescriptor& d, const CMatrix& H) {
  // Work in the Cartesian frame, where H is real symmetric.
  const CMatrix U = so3_vector_basis();
  const CMatrix Hc = (U.adjoint() * H * U).real().cast<Complex>();
  const CMatrix Rc = signed_sqrt(Hc, *d.side_info_det_f1);
  return U * Rc.real().cast<Complex>() * U.adjoint();
}

std::vector<double> residuals(const CoefficientSet& F, const CoefficientSet& Fhat, const GroupElement& x) {
  const std::vector<CMatrix> D = wigner_all(F.bandlimit, x);
  std::vector<double> r;
  for (int ell = 0; ell <= F.bandlimit; ++ell)
    r.push_back((Fhat[ell] - F[ell] * D[ell]).norm() / std::max(F[ell].norm(), 1e-300));
  return r;
}

void require_matching(const CoefficientSet& F, const CoefficientSet& Fhat) {
  require_same_group(F.group, Fhat.group);
  if (F.bandlimit != Fhat.bandlimit) throw DomainError("coefficient bandlimits differ");
  F.validate();
  Fhat.validate();
  if (F.bandlimit < 1) throw PreconditionError("alignment needs bandlimit >= 1");
}

}  // namespace

double AlignmentWitness::max_residual() const {
  double r = 0.0;
  for (double v : per_ell_residuals) r = std::max(r, v);
  return r;
}

ReconstructionReport reconstruct_su2(const BispectrumDescriptor& d) {
  require_same_group(d.group, GroupTag::SU2);
  return recursive_reconstruction(d, su2_first_root);
}

ReconstructionReport reconstruct_so3(const BispectrumDescriptor& d) {
  require_same_group(d.group, GroupTag::SO3);
  if (d.bandlimit >= 1 && (!d.side_info_det_f1 || *d.side_info_det_f1 == 0.0))
    throw PreconditionError("SO(3) reconstruction needs nonzero det F(1) side information");
  return recursive_reconstruction(d, so3_first_root);
}

ReconstructionReport reconstruct(const BispectrumDescriptor& d, const CoefficientSet* truth) {
  ReconstructionReport r = d.group == GroupTag::SU2 ? reconstruct_su2(d) : reconstruct_so3(d);
  if (truth) r.witness = find_alignment(*truth, r.recovered);
  return r;
}

AlignmentWitness find_alignment(const CoefficientSet& F, const CoefficientSet& Fhat) {
  require_matching(F, Fhat);
  if (!(condition_number(F[1]) <= kConditionLimit)) throw SingularMatrixError("F(1) is singular", 1);
  const CMatrix V = F[1].partialPivLu().solve(Fhat[1]);

  GroupElement x = GroupElement::identity(F.group);
  if (F.group == GroupTag::SU2) {
    CMatrix W = polar_decompose(V).U;
    W /= std::sqrt(W.determinant());
    const Complex a = W(0, 0), b = W(1, 0);
    x = GroupElement::from_quaternion(Eigen::Quaterniond(a.real(), -b.imag(), b.real(), -a.imag()));
  } else {
    const CMatrix U = so3_vector_basis();
    x = GroupElement::from_rotation(nearest_rotation((U.adjoint() * V * U).real()));
  }
  const double gap = (V - wigner(1, x)).norm();
  if (!(gap <= kAlignmentTolerance))
    throw AlignmentError("F(1)^{-1} Fhat(1) is " + std::to_string(gap) + " away from the group image");
  return {x, residuals(F, Fhat, x)};
}

AlignmentWitness find_sphere_alignment(const CoefficientSet& F, const CoefficientSet& Fhat) {
  require_matching(F, Fhat);
  require_same_group(F.group, GroupTag::SO3);
  // Degree 1: r D_1(x) = rhat with r the m = 0 row, i.e. x^T w = what for
  // the Cartesian rows w = r U, what = rhat U.
  const CMatrix U = so3_vector_basis();
  const Eigen::RowVector3cd wc = F[1].row(1) * U;
  const Eigen::RowVector3cd whc = Fhat[1].row(1) * U;
  const Eigen::Vector3d w = wc.real().transpose();
  const Eigen::Vector3d wh = whc.real().transpose();
  if (!(w.norm() > 1e-12)) throw AlignmentError("degree-1 component vanishes; alignment is undetermined");
  if (std::abs(w.norm() - wh.norm()) > 1e-6 * w.norm())
    throw AlignmentError("degree-1 components differ in length; no rotation relates them");
  const Eigen::Matrix3d R0 = Eigen::Quaterniond::FromTwoVectors(w, wh).toRotationMatrix();
  const Eigen::Vector3d axis = wh.normalized();

  auto element = [&](double t) {
    const Eigen::Matrix3d y = Eigen::AngleAxisd(t, axis).toRotationMatrix() * R0;
    return GroupElement::from_rotation(y.transpose());
  };
  // Stacked misfit of the higher degrees, as a real vector.
  auto misfit = [&](double t) {
    const std::vector<CMatrix> D = wigner_all(F.bandlimit, element(t));
    std::vector<double> v;
    for (int ell = 2; ell <= F.bandlimit; ++ell) {
      const CMatrix e = Fhat[ell].row(ell) - F[ell].row(ell) * D[ell];
      for (Eigen::Index i = 0; i < e.size(); ++i) {
        v.push_back(e(i).real());
        v.push_back(e(i).imag());
      }
    }
    return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())).eval();
  };

  double best_t = 0.0;
  if (F.bandlimit >= 2) {
    const int n = 720;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
      const double t = 2 * std::numbers::pi * k / n;
      const double m = misfit(t).squaredNorm();
      if (m < best) {
        best = m;
        best_t = t;
      }
    }
    // Gauss-Newton on the misfit vector.
    for (int it = 0; it < 30; ++it) {
      const double h = 1e-6;
      const Eigen::VectorXd r = misfit(best_t);
      const Eigen::VectorXd J = (misfit(best_t + h) - misfit(best_t - h)) / (2 * h);
      const double jj = J.squaredNorm();
      if (!(jj > 0.0)) break;
      const double step = -J.dot(r) / jj;
      best_t += step;
      if (std::abs(step) < 1e-15) break;
    }
  }
  const GroupElement x = element(best_t);
  return {x, residuals(F, Fhat, x)};
}

NormalizerCheck check_sphere_witness(const GroupElement& x) {
  require_same_group(x.group(), GroupTag::SO3);
  NormalizerCheck out;
  const Eigen::Vector3d ez = Eigen::Vector3d::UnitZ();
  for (int k = 1; k <= 12; ++k) {
    const double theta = 2 * std::numbers::pi * k / 13.0;
    const GroupElement c = x * rotation_z(theta, GroupTag::SO3) * x.inverse();
    out.max_deviation = std::max(out.max_deviation, (c.rotation_matrix() * ez - ez).norm());
  }
  out.in_normalizer = out.max_deviation <= 1e-9;
  return out;
}

}  // namespace bispec
