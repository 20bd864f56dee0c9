#pragma once

#include <cstddef>
#include <vector>

#include "vrsd/sparse.hpp"

namespace vrsd {

/// Truncated factor S_r V_r^T of the data matrix, stored row-major (r x d).
/// Used to approximate ||A x||^2 in O(r d) instead of O(nnz).
struct RankRFactors {
  std::size_t r = 0;
  std::size_t n_cols = 0;
  std::vector<double> factor;  // r * n_cols, row-major
  double energy_captured = 0.0;

  double row_entry(std::size_t i, std::size_t j) const { return factor[i * n_cols + j]; }
};

/// Smallest-r truncated SVD capturing at least `energy_threshold` of the
/// squared singular-value mass, capped at r_max. Uses an exact Gram-matrix
/// eigendecomposition for modest d and block power iteration beyond that.
RankRFactors partial_svd(const SparseMatrix& A, double energy_threshold, std::size_t r_max);

/// ||S_r V_r^T x||^2, a lower bound on ||A x||^2.
double approx_norm_ax_sq(const RankRFactors& f, const DenseVector& x);

}  // namespace vrsd
