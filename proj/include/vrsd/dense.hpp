#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace vrsd {

using DenseVector = std::vector<double>;

inline void check_same_size(const DenseVector& a, const DenseVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector dimension mismatch");
}

inline double dot(const DenseVector& a, const DenseVector& b) {
  check_same_size(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm_sq(const DenseVector& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

inline double norm(const DenseVector& a) { return std::sqrt(norm_sq(a)); }

inline double norm_l1(const DenseVector& a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

// y += c * x
inline void axpy(double c, const DenseVector& x, DenseVector& y) {
  check_same_size(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += c * x[i];
}

inline void scale(DenseVector& x, double c) {
  for (double& v : x) v *= c;
}

inline DenseVector scaled(const DenseVector& x, double c) {
  DenseVector r(x);
  scale(r, c);
  return r;
}

inline bool all_finite(const DenseVector& x) {
  for (double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

inline double max_abs_diff(const DenseVector& a, const DenseVector& b) {
  check_same_size(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace vrsd
