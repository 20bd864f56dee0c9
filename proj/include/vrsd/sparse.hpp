#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vrsd/dense.hpp"

namespace vrsd {

/// Row-compressed sparse matrix. Every algorithm here walks whole rows a_i,
/// so only row access is provided.
struct SparseMatrix {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<std::size_t> row_ptr;  // size n_rows + 1
  std::vector<std::size_t> col_idx;  // strictly increasing within each row
  std::vector<double> values;        // finite, nonzero

  SparseMatrix() : row_ptr(1, 0) {}
  SparseMatrix(std::size_t rows, std::size_t cols)
      : n_rows(rows), n_cols(cols), row_ptr(rows + 1, 0) {}

  std::size_t row_nnz(std::size_t i) const { return row_ptr[i + 1] - row_ptr[i]; }
  std::span<const std::size_t> row_cols(std::size_t i) const {
    return {col_idx.data() + row_ptr[i], row_nnz(i)};
  }
  std::span<const double> row_values(std::size_t i) const {
    return {values.data() + row_ptr[i], row_nnz(i)};
  }

  /// Throws std::invalid_argument if any structural invariant is violated.
  void validate() const;

  static SparseMatrix from_dense(const std::vector<DenseVector>& rows, std::size_t n_cols);
  std::vector<DenseVector> to_dense() const;
};

/// Builds a matrix row by row; entries within a row must be appended in
/// strictly increasing column order.
class SparseMatrixBuilder {
 public:
  explicit SparseMatrixBuilder(std::size_t n_cols) { m_.n_cols = n_cols; }

  void add_entry(std::size_t col, double value);
  void finish_row();
  SparseMatrix build();

 private:
  SparseMatrix m_{0, 0};
};

DenseVector spmv(const SparseMatrix& A, const DenseVector& x);
double row_dot(const SparseMatrix& A, std::size_t i, const DenseVector& x);
double row_norm_sq(const SparseMatrix& A, std::size_t i);

/// sign(v) * max(|v| - tau, 0)
inline double soft_threshold(double v, double tau) {
  if (v > tau) return v - tau;
  if (v < -tau) return v + tau;
  return 0.0;
}

}  // namespace vrsd
