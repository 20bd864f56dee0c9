#include "vrsd/problem.hpp"

#include <cmath>

namespace vrsd {

double Regularizer::value(const DenseVector& x) const {
  switch (kind) {
    case RegKind::None:
      return 0.0;
    case RegKind::L1:
      return lambda1 * norm_l1(x);
    case RegKind::SquaredL2:
      return 0.5 * lambda1 * norm_sq(x);
    case RegKind::ElasticNet:
      return lambda1 * norm_l1(x) + 0.5 * lambda2 * norm_sq(x);
  }
  return 0.0;
}

void Regularizer::add_gradient(const DenseVector& x, DenseVector& g) const {
  if (kind == RegKind::None) return;
  if (kind != RegKind::SquaredL2)
    throw std::logic_error("regularizer gradient requested for non-differentiable kind");
  axpy(lambda1, x, g);
}

ProblemInstance ProblemInstance::create(SparseMatrix A, DenseVector b, Regularizer reg,
                                        std::size_t svd_rank, double energy_threshold) {
  reg.check();
  A.validate();
  if (b.size() != A.n_rows) throw std::invalid_argument("label length must equal row count");
  if (!all_finite(b)) throw std::invalid_argument("labels must be finite");

  ProblemInstance p;
  p.b = std::move(b);
  p.reg = reg;
  p.bta.assign(A.n_cols, 0.0);
  for (std::size_t i = 0; i < A.n_rows; ++i)
    for (std::size_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
      p.bta[A.col_idx[k]] += p.b[i] * A.values[k];
  p.row_norms_sq.resize(A.n_rows);
  double lmax = 0.0;
  for (std::size_t i = 0; i < A.n_rows; ++i) {
    p.row_norms_sq[i] = row_norm_sq(A, i);
    lmax = std::max(lmax, p.row_norms_sq[i]);
  }
  if (lmax == 0.0) throw std::invalid_argument("all-zero data matrix: Lipschitz bound degenerate");
  if (reg.kind == RegKind::SquaredL2 && reg.smooth_handled()) lmax += reg.lambda1;
  p.lipschitz = lmax;
  p.b_norm_sq = norm_sq(p.b);
  if (svd_rank > 0) p.svd = partial_svd(A, energy_threshold, svd_rank);
  p.A = std::move(A);
  return p;
}

DenseVector component_gradient(const ProblemInstance& p, std::size_t i, const DenseVector& x) {
  if (i >= p.n()) throw std::out_of_range("component index out of range");
  const double residual = row_dot(p.A, i, x) - p.b[i];
  DenseVector g(p.d(), 0.0);
  for (std::size_t k = p.A.row_ptr[i]; k < p.A.row_ptr[i + 1]; ++k)
    g[p.A.col_idx[k]] = p.A.values[k] * residual;
  if (p.reg.smooth_handled()) p.reg.add_gradient(x, g);
  return g;
}

DenseVector full_gradient(const ProblemInstance& p, const DenseVector& x) {
  if (x.size() != p.d()) throw std::invalid_argument("full_gradient dimension mismatch");
  DenseVector g(p.d(), 0.0);
  const double inv_n = 1.0 / static_cast<double>(p.n());
  for (std::size_t i = 0; i < p.n(); ++i) {
    const double c = (row_dot(p.A, i, x) - p.b[i]) * inv_n;
    for (std::size_t k = p.A.row_ptr[i]; k < p.A.row_ptr[i + 1]; ++k)
      g[p.A.col_idx[k]] += p.A.values[k] * c;
  }
  if (p.reg.smooth_handled()) p.reg.add_gradient(x, g);
  return g;
}

double evaluate_objective(const ProblemInstance& p, const DenseVector& x) {
  if (x.size() != p.d()) throw std::invalid_argument("objective dimension mismatch");
  double loss = 0.0;
  for (std::size_t i = 0; i < p.n(); ++i) {
    const double r = row_dot(p.A, i, x) - p.b[i];
    loss += r * r;
  }
  return loss / (2.0 * static_cast<double>(p.n())) + p.reg.value(x);
}

DenseVector prox_step(const ProblemInstance& p, const DenseVector& y, double eta) {
  if (eta <= 0.0) throw std::invalid_argument("prox step size must be positive");
  if (p.reg.smooth_handled())
    throw std::logic_error("prox_step called with smooth-handled regularizer");
  const Regularizer& reg = p.reg;
  DenseVector x(y);
  switch (reg.kind) {
    case RegKind::None:
      break;
    case RegKind::L1: {
      const double tau = eta * reg.lambda1;
      for (double& v : x) v = soft_threshold(v, tau);
      break;
    }
    case RegKind::SquaredL2: {
      const double c = 1.0 / (1.0 + eta * reg.lambda1);
      for (double& v : x) v *= c;
      break;
    }
    case RegKind::ElasticNet: {
      const double tau = eta * reg.lambda1;
      const double c = 1.0 / (1.0 + eta * reg.lambda2);
      for (double& v : x) v = soft_threshold(v, tau) * c;
      break;
    }
  }
  return x;
}

double lipschitz_bound(const ProblemInstance& p) { return p.lipschitz; }

double norm_ax_sq(const ProblemInstance& p, const DenseVector& x, bool use_rank_r) {
  if (use_rank_r && p.svd) return approx_norm_ax_sq(*p.svd, x);
  return norm_sq(spmv(p.A, x));
}

}  // namespace vrsd
