#include "vrsd/synthetic.hpp"

#include <cmath>
#include <stdexcept>

#include "vrsd/io.hpp"
#include "vrsd/rng.hpp"

namespace vrsd {

SyntheticProblem make_synthetic(std::size_t n, std::size_t d, double noise_sd, double sparsity,
                                std::uint64_t seed) {
  if (n == 0 || d == 0) throw std::invalid_argument("make_synthetic: n and d must be >= 1");
  if (!(sparsity > 0.0 && sparsity <= 1.0))
    throw std::invalid_argument("make_synthetic: sparsity must lie in (0, 1]");
  if (noise_sd < 0.0) throw std::invalid_argument("make_synthetic: noise_sd must be >= 0");

  Rng rng(split_seed(seed, 5));
  SyntheticProblem out;
  SparseMatrixBuilder builder(d);
  for (std::size_t i = 0; i < n; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < d; ++j) {
      if (sparsity >= 1.0 || rng.uniform01() < sparsity) {
        double v = rng.normal();
        if (v == 0.0) v = 1.0;
        builder.add_entry(j, v);
        any = true;
      }
    }
    if (!any) {
      // degenerate draw; place one entry so the row is usable
      double v = rng.normal();
      builder.add_entry(rng.uniform_index(d), v == 0.0 ? 1.0 : v);
    }
    builder.finish_row();
  }
  out.A = normalize_rows(builder.build());

  out.x_true.resize(d);
  for (double& v : out.x_true) v = rng.normal();

  out.b = spmv(out.A, out.x_true);
  if (noise_sd > 0.0)
    for (double& v : out.b) v += noise_sd * rng.normal();
  return out;
}

}  // namespace vrsd
