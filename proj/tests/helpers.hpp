#pragma once

#include <cmath>
#include <vector>

#include "vrsd/problem.hpp"
#include "vrsd/rng.hpp"
#include "vrsd/sparse.hpp"

namespace vrsd_test {

using vrsd::DenseVector;
using vrsd::SparseMatrix;

inline std::vector<DenseVector> random_dense_rows(vrsd::Rng& rng, std::size_t n, std::size_t d,
                                                  double density = 1.0) {
  std::vector<DenseVector> rows(n, DenseVector(d, 0.0));
  for (auto& row : rows) {
    bool any = false;
    for (double& v : row)
      if (density >= 1.0 || rng.uniform01() < density) {
        v = rng.normal();
        any = true;
      }
    if (!any) row[rng.uniform_index(d)] = rng.normal() + 2.0;
  }
  return rows;
}

inline DenseVector random_vector(vrsd::Rng& rng, std::size_t d) {
  DenseVector x(d);
  for (double& v : x) v = rng.normal();
  return x;
}

// Dense oracle for A x.
inline DenseVector dense_mv(const std::vector<DenseVector>& rows, const DenseVector& x) {
  DenseVector out(rows.size(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) out[i] += rows[i][j] * x[j];
  return out;
}

inline vrsd::ProblemInstance random_problem(vrsd::Rng& rng, std::size_t n, std::size_t d,
                                            vrsd::Regularizer reg, double density = 1.0,
                                            std::size_t svd_rank = 0) {
  const auto rows = random_dense_rows(rng, n, d, density);
  DenseVector b = random_vector(rng, n);
  return vrsd::ProblemInstance::create(SparseMatrix::from_dense(rows, d), std::move(b), reg,
                                       svd_rank);
}

}  // namespace vrsd_test
