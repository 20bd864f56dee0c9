#pragma once

#include <iosfwd>
#include <string>
#include <utility>

#include "vrsd/sparse.hpp"

namespace vrsd {

/// Data-file problems surface as ParseError with a 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_number(line) {}
  std::size_t line_number;
};

struct LibsvmData {
  SparseMatrix A;
  DenseVector b;
};

/// Parses `<label> <idx>:<val> ...` lines with 1-based strictly increasing
/// indices. Blank lines and `#` comments are skipped. n_cols is the maximum
/// index seen unless overridden (override smaller than the data is an error).
LibsvmData load_libsvm(const std::string& path, std::size_t n_cols_override = 0);
LibsvmData parse_libsvm(std::istream& in, std::size_t n_cols_override = 0);

void save_libsvm(const std::string& path, const SparseMatrix& A, const DenseVector& b);

/// Scales every nonzero row to unit Euclidean norm; zero rows pass through.
SparseMatrix normalize_rows(const SparseMatrix& A);

/// Reference-optimum file: `f_star` followed by the minimizer coordinates.
struct ReferenceOptimum {
  DenseVector x_star;
  double f_star = 0.0;
  bool converged = true;
};

void save_reference(const std::string& path, const ReferenceOptimum& ref);
ReferenceOptimum load_reference(const std::string& path);

}  // namespace vrsd
