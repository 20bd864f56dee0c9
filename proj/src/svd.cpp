#include "vrsd/svd.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vrsd {

namespace {

constexpr std::size_t kExactGramMaxDim = 4096;
constexpr int kPowerIterCap = 100;
constexpr double kPowerIterTol = 1e-8;

Eigen::MatrixXd gram_matrix(const SparseMatrix& A) {
  const auto d = static_cast<Eigen::Index>(A.n_cols);
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < A.n_rows; ++i) {
    for (std::size_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
      for (std::size_t l = A.row_ptr[i]; l < A.row_ptr[i + 1]; ++l) {
        G(static_cast<Eigen::Index>(A.col_idx[k]), static_cast<Eigen::Index>(A.col_idx[l])) +=
            A.values[k] * A.values[l];
      }
    }
  }
  return G;
}

// Columns of X mapped through A^T A without forming the Gram matrix.
Eigen::MatrixXd apply_gram(const SparseMatrix& A, const Eigen::MatrixXd& X) {
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(X.rows(), X.cols());
  for (std::size_t i = 0; i < A.n_rows; ++i) {
    for (Eigen::Index c = 0; c < X.cols(); ++c) {
      double s = 0.0;
      for (std::size_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
        s += A.values[k] * X(static_cast<Eigen::Index>(A.col_idx[k]), c);
      for (std::size_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
        Y(static_cast<Eigen::Index>(A.col_idx[k]), c) += A.values[k] * s;
    }
  }
  return Y;
}

double frobenius_energy(const SparseMatrix& A) {
  double s = 0.0;
  for (double v : A.values) s += v * v;
  return s;
}

struct Spectrum {
  std::vector<double> eigvals;  // descending, >= 0
  Eigen::MatrixXd vectors;      // d x k, column i pairs with eigvals[i]
};

Spectrum exact_spectrum(const SparseMatrix& A) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram_matrix(A));
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  const auto d = es.eigenvalues().size();
  Spectrum sp;
  sp.eigvals.resize(static_cast<std::size_t>(d));
  sp.vectors.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {  // Eigen sorts ascending; flip
    sp.eigvals[static_cast<std::size_t>(i)] = std::max(es.eigenvalues()(d - 1 - i), 0.0);
    sp.vectors.col(i) = es.eigenvectors().col(d - 1 - i);
  }
  return sp;
}

Spectrum power_spectrum(const SparseMatrix& A, std::size_t block) {
  const auto d = static_cast<Eigen::Index>(A.n_cols);
  const auto k = static_cast<Eigen::Index>(block);
  Eigen::MatrixXd X(d, k);
  std::uint64_t state = 0x853c49e6748fea9bULL;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      X(i, j) = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
    }
  Eigen::VectorXd prev = Eigen::VectorXd::Zero(k);
  for (int it = 0; it < kPowerIterCap; ++it) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(apply_gram(A, X));
    X = qr.householderQ() * Eigen::MatrixXd::Identity(d, k);
    Eigen::MatrixXd small = X.transpose() * apply_gram(A, X);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(small);
    Eigen::VectorXd vals = es.eigenvalues().reverse();
    Eigen::VectorXd sv = vals.cwiseMax(0.0).cwiseSqrt();
    if (it > 0 && (sv - prev).cwiseAbs().maxCoeff() < kPowerIterTol) {
      prev = sv;
      Spectrum sp;
      sp.eigvals.assign(vals.data(), vals.data() + vals.size());
      for (double& v : sp.eigvals) v = std::max(v, 0.0);
      sp.vectors = X * es.eigenvectors().rowwise().reverse();
      return sp;
    }
    prev = sv;
    Eigen::MatrixXd rot = es.eigenvectors().rowwise().reverse();
    X = X * rot;
  }
  Eigen::MatrixXd small = X.transpose() * apply_gram(A, X);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(small);
  Spectrum sp;
  Eigen::VectorXd vals = es.eigenvalues().reverse();
  sp.eigvals.assign(vals.data(), vals.data() + vals.size());
  for (double& v : sp.eigvals) v = std::max(v, 0.0);
  sp.vectors = X * es.eigenvectors().rowwise().reverse();
  return sp;
}

}  // namespace

RankRFactors partial_svd(const SparseMatrix& A, double energy_threshold, std::size_t r_max) {
  if (A.n_rows == 0 || A.n_cols == 0 || A.values.empty())
    throw std::invalid_argument("partial_svd: empty matrix");
  if (!(energy_threshold > 0.0 && energy_threshold <= 1.0))
    throw std::invalid_argument("partial_svd: energy threshold must be in (0, 1]");
  if (r_max < 1) throw std::invalid_argument("partial_svd: r_max must be >= 1");

  const std::size_t max_rank = std::min(A.n_rows, A.n_cols);
  const std::size_t cap = std::min(r_max, max_rank);
  const double total_energy = frobenius_energy(A);

  const Spectrum sp = (A.n_cols <= kExactGramMaxDim)
                          ? exact_spectrum(A)
                          : power_spectrum(A, std::min(cap + 2, max_rank));

  std::size_t r = 0;
  double captured = 0.0;
  const std::size_t available = std::min<std::size_t>(sp.eigvals.size(), cap);
  while (r < available) {
    captured += sp.eigvals[r];
    ++r;
    if (captured / total_energy >= energy_threshold) break;
  }
  if (r == 0) r = 1;

  RankRFactors f;
  f.r = r;
  f.n_cols = A.n_cols;
  f.energy_captured = std::min(captured / total_energy, 1.0);
  f.factor.resize(r * A.n_cols);
  for (std::size_t i = 0; i < r; ++i) {
    const double sigma = std::sqrt(sp.eigvals[i]);
    for (std::size_t j = 0; j < A.n_cols; ++j)
      f.factor[i * A.n_cols + j] =
          sigma * sp.vectors(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
  }
  return f;
}

double approx_norm_ax_sq(const RankRFactors& f, const DenseVector& x) {
  if (x.size() != f.n_cols) throw std::invalid_argument("approx_norm_ax_sq dimension mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < f.r; ++i) {
    double s = 0.0;
    const double* row = f.factor.data() + i * f.n_cols;
    for (std::size_t j = 0; j < f.n_cols; ++j) s += row[j] * x[j];
    total += s * s;
  }
  return total;
}

}  // namespace vrsd
