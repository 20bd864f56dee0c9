#pragma once

#include <cstdint>

#include "vrsd/sparse.hpp"

namespace vrsd {

struct SyntheticProblem {
  SparseMatrix A;   // rows already unit-normalized
  DenseVector b;    // A * x_true + noise
  DenseVector x_true;
};

/// Deterministic per seed. `sparsity` is the per-entry nonzero probability;
/// empty rows get one forced entry so every sample carries signal.
SyntheticProblem make_synthetic(std::size_t n, std::size_t d, double noise_sd, double sparsity,
                                std::uint64_t seed);

}  // namespace vrsd
