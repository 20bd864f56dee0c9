#include "vrsd/sparse.hpp"

#include <cmath>
#include <stdexcept>

namespace vrsd {

void SparseMatrix::validate() const {
  if (row_ptr.size() != n_rows + 1) throw std::invalid_argument("row_ptr size mismatch");
  if (row_ptr.front() != 0 || row_ptr.back() != col_idx.size())
    throw std::invalid_argument("row_ptr bounds mismatch");
  if (col_idx.size() != values.size()) throw std::invalid_argument("col/value size mismatch");
  for (std::size_t i = 0; i < n_rows; ++i) {
    if (row_ptr[i] > row_ptr[i + 1]) throw std::invalid_argument("row_ptr not nondecreasing");
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      if (col_idx[k] >= n_cols) throw std::invalid_argument("column index out of range");
      if (k > row_ptr[i] && col_idx[k] <= col_idx[k - 1])
        throw std::invalid_argument("column indices not strictly increasing");
      if (!std::isfinite(values[k]) || values[k] == 0.0)
        throw std::invalid_argument("stored value not finite and nonzero");
    }
  }
}

SparseMatrix SparseMatrix::from_dense(const std::vector<DenseVector>& rows, std::size_t n_cols) {
  SparseMatrixBuilder b(n_cols);
  for (const auto& row : rows) {
    if (row.size() != n_cols) throw std::invalid_argument("dense row length mismatch");
    for (std::size_t j = 0; j < n_cols; ++j)
      if (row[j] != 0.0) b.add_entry(j, row[j]);
    b.finish_row();
  }
  return b.build();
}

std::vector<DenseVector> SparseMatrix::to_dense() const {
  std::vector<DenseVector> rows(n_rows, DenseVector(n_cols, 0.0));
  for (std::size_t i = 0; i < n_rows; ++i)
    for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) rows[i][col_idx[k]] = values[k];
  return rows;
}

void SparseMatrixBuilder::add_entry(std::size_t col, double value) {
  if (col >= m_.n_cols) throw std::invalid_argument("column index out of range");
  if (m_.col_idx.size() > m_.row_ptr.back() && col <= m_.col_idx.back())
    throw std::invalid_argument("column indices must be strictly increasing within a row");
  if (!std::isfinite(value)) throw std::invalid_argument("value not finite");
  if (value == 0.0) return;  // structural zeros are not stored
  m_.col_idx.push_back(col);
  m_.values.push_back(value);
}

void SparseMatrixBuilder::finish_row() {
  ++m_.n_rows;
  m_.row_ptr.push_back(m_.col_idx.size());
}

SparseMatrix SparseMatrixBuilder::build() {
  m_.validate();
  return std::move(m_);
}

DenseVector spmv(const SparseMatrix& A, const DenseVector& x) {
  if (x.size() != A.n_cols) throw std::invalid_argument("spmv dimension mismatch");
  DenseVector y(A.n_rows, 0.0);
  for (std::size_t i = 0; i < A.n_rows; ++i) {
    double s = 0.0;
    for (std::size_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
      s += A.values[k] * x[A.col_idx[k]];
    y[i] = s;
  }
  return y;
}

double row_dot(const SparseMatrix& A, std::size_t i, const DenseVector& x) {
  if (i >= A.n_rows) throw std::out_of_range("row index out of range");
  if (x.size() != A.n_cols) throw std::invalid_argument("row_dot dimension mismatch");
  double s = 0.0;
  for (std::size_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
    s += A.values[k] * x[A.col_idx[k]];
  return s;
}

double row_norm_sq(const SparseMatrix& A, std::size_t i) {
  if (i >= A.n_rows) throw std::out_of_range("row index out of range");
  double s = 0.0;
  for (std::size_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) s += A.values[k] * A.values[k];
  return s;
}

}  // namespace vrsd
