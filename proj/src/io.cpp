#include "vrsd/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "vrsd/format.hpp"

namespace vrsd {

namespace {

bool parse_double(std::string_view tok, double& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size() && std::isfinite(out);
}

bool parse_index(std::string_view tok, std::size_t& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc{} && ptr == tok.data() + tok.size();
}

struct RawRow {
  double label = 0.0;
  std::vector<std::pair<std::size_t, double>> entries;  // 0-based column indices
};

}  // namespace

LibsvmData parse_libsvm(std::istream& in, std::size_t n_cols_override) {
  std::vector<RawRow> rows;
  std::size_t max_col = 0;  // 1 + largest 0-based index
  std::string line;
  std::size_t line_no = 0;
  bool any_line = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    any_line = true;

    std::istringstream fields(line);
    std::string tok;
    if (!(fields >> tok)) throw ParseError("missing label", line_no);
    RawRow row;
    if (!parse_double(tok, row.label)) throw ParseError("malformed label '" + tok + "'", line_no);
    std::size_t prev_idx = 0;  // 1-based; 0 means none yet
    while (fields >> tok) {
      if (tok[0] == '#') break;
      const auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon == tok.size() - 1)
        throw ParseError("malformed feature token '" + tok + "'", line_no);
      std::size_t idx;
      double val;
      if (!parse_index(std::string_view(tok).substr(0, colon), idx) || idx == 0)
        throw ParseError("malformed feature index in '" + tok + "'", line_no);
      if (!parse_double(std::string_view(tok).substr(colon + 1), val))
        throw ParseError("malformed feature value in '" + tok + "'", line_no);
      if (idx <= prev_idx)
        throw ParseError("feature indices must be strictly increasing", line_no);
      prev_idx = idx;
      max_col = std::max(max_col, idx);
      if (val != 0.0) row.entries.emplace_back(idx - 1, val);
    }
    rows.push_back(std::move(row));
  }
  if (!any_line) throw ParseError("empty file", std::max<std::size_t>(line_no, 1));

  std::size_t n_cols = max_col;
  if (n_cols_override > 0) {
    if (n_cols_override < max_col)
      throw ParseError("dimension override " + std::to_string(n_cols_override) +
                           " smaller than max feature index " + std::to_string(max_col),
                       line_no);
    n_cols = n_cols_override;
  }
  if (n_cols == 0) n_cols = 1;  // label-only file; keep a valid shape

  LibsvmData data;
  SparseMatrixBuilder builder(n_cols);
  data.b.reserve(rows.size());
  for (const auto& row : rows) {
    for (const auto& [col, val] : row.entries) builder.add_entry(col, val);
    builder.finish_row();
    data.b.push_back(row.label);
  }
  data.A = builder.build();
  return data;
}

LibsvmData load_libsvm(const std::string& path, std::size_t n_cols_override) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open data file: " + path);
  return parse_libsvm(in, n_cols_override);
}

void save_libsvm(const std::string& path, const SparseMatrix& A, const DenseVector& b) {
  if (b.size() != A.n_rows) throw std::invalid_argument("save_libsvm: label count mismatch");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  for (std::size_t i = 0; i < A.n_rows; ++i) {
    out << format_double(b[i]);
    for (std::size_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
      out << ' ' << (A.col_idx[k] + 1) << ':' << format_double(A.values[k]);
    out << '\n';
  }
}

SparseMatrix normalize_rows(const SparseMatrix& A) {
  SparseMatrix out(A);
  for (std::size_t i = 0; i < A.n_rows; ++i) {
    const double nrm = std::sqrt(row_norm_sq(A, i));
    if (nrm == 0.0) continue;
    for (std::size_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) out.values[k] /= nrm;
  }
  return out;
}

void save_reference(const std::string& path, const ReferenceOptimum& ref) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open reference file: " + path);
  out << "# vrsd reference optimum" << (ref.converged ? "" : " (warning: not converged)")
      << '\n';
  out << "f_star " << format_double(ref.f_star) << '\n';
  out << "converged " << (ref.converged ? 1 : 0) << '\n';
  out << "x";
  for (double v : ref.x_star) out << ' ' << format_double(v);
  out << '\n';
}

ReferenceOptimum load_reference(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open reference file: " + path);
  ReferenceOptimum ref;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string key;
    fields >> key;
    if (key == "f_star") {
      fields >> ref.f_star;
    } else if (key == "converged") {
      int c = 1;
      fields >> c;
      ref.converged = c != 0;
    } else if (key == "x") {
      double v;
      while (fields >> v) ref.x_star.push_back(v);
    }
  }
  return ref;
}

}  // namespace vrsd
