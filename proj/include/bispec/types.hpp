#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace bispec {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;

enum class GroupTag { SU2, SO3 };

std::string_view to_string(GroupTag tag);
GroupTag parse_group_tag(std::string_view text);

/// Label of an irreducible representation. SU(2) irreps are indexed by
/// ell = 2j (dimension ell + 1); SO(3) irreps by ell = j (dimension 2 ell + 1).
struct IrrepIndex {
  int ell = 0;
  GroupTag group = GroupTag::SO3;

  /// Twice the spin.
  int two_j() const { return group == GroupTag::SU2 ? ell : 2 * ell; }
  int dim() const { return two_j() + 1; }

  friend bool operator==(const IrrepIndex&, const IrrepIndex&) = default;
};

inline int irrep_dim(GroupTag tag, int ell) { return IrrepIndex{ell, tag}.dim(); }

// Errors. Everything thrown by the library derives from Error.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TagMismatchError : public Error {
 public:
  TagMismatchError(GroupTag a, GroupTag b);
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotPsdError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  SingularMatrixError(const std::string& what, int ell = -1)
      : Error(what), ell_(ell) {}
  /// Irrep index at which the singular matrix occurred, -1 if not applicable.
  int ell() const { return ell_; }

 private:
  int ell_;
};

class ZeroMeanError : public Error {
 public:
  using Error::Error;
};

class AlignmentError : public Error {
 public:
  using Error::Error;
};

inline void require_same_group(GroupTag a, GroupTag b) {
  if (a != b) throw TagMismatchError(a, b);
}

}  // namespace bispec
