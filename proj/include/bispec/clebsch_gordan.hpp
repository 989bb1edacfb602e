#pragma once

#include <vector>

#include "bispec/types.hpp"

namespace bispec {

/// Unitary C with D_p(g) (x) D_q(g) = C [D_{a_1}(g) (+) ... (+) D_{a_k}(g)] C^dagger.
///
/// Columns of each block are ordered m = j, j-1, ..., -j like the Wigner
/// matrices; the tensor basis is the Kronecker order (row of p major).
struct CGDecomposition {
  IrrepIndex p;
  IrrepIndex q;
  CMatrix C;
  /// Irrep labels in block order: decreasing from p+q down to |p-q|.
  std::vector<int> indices;
  /// Column offset of each block inside C.
  std::vector<int> offsets;

  int block_dim(std::size_t i) const { return irrep_dim(p.group, indices[i]); }
};

/// Block labels of p (x) q: SU(2) [p+q, p+q-2, ..., |p-q|], SO(3) [n+m, ..., |n-m|].
std::vector<int> tensor_indices(const IrrepIndex& p, const IrrepIndex& q);

/// Cached, thread-safe. The highest-weight vector of every block is the null
/// vector of the total raising operator on its weight space; the rest of the
/// block follows by lowering. Each block's overall sign makes the first
/// nonzero entry of its first column positive (Condon-Shortley).
const CGDecomposition& clebsch_gordan(const IrrepIndex& p, const IrrepIndex& q);

/// Uncached construction.
CGDecomposition build_clebsch_gordan(const IrrepIndex& p, const IrrepIndex& q);

/// Kronecker product with row index i_a * rows(b) + i_b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Block-diagonal direct sum.
CMatrix direct_sum(const std::vector<CMatrix>& blocks);

namespace testing {
/// Negative-control hook: when enabled, newly built decompositions have the
/// sign of one column flipped (breaking the intertwiner). Clears the cache.
void set_cg_corruption(bool enabled);
bool cg_corruption_enabled();
}  // namespace testing

}  // namespace bispec
