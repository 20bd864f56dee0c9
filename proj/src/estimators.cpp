#include "vrsd/estimators.hpp"

#include <cmath>

namespace vrsd {

namespace {

// y += c * a_i over the row's support.
void add_row(const SparseMatrix& A, std::size_t i, double c, DenseVector& y) {
  for (std::size_t k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k)
    y[A.col_idx[k]] += A.values[k] * c;
}

DenseVector f_part_gradient(const ProblemInstance& p, const DenseVector& x) {
  DenseVector g(p.d(), 0.0);
  const double inv_n = 1.0 / static_cast<double>(p.n());
  for (std::size_t i = 0; i < p.n(); ++i)
    add_row(p.A, i, (row_dot(p.A, i, x) - p.b[i]) * inv_n, g);
  return g;
}

}  // namespace

SvrgSnapshot make_svrg_snapshot(const ProblemInstance& p, const DenseVector& x_tilde) {
  return {x_tilde, full_gradient(p, x_tilde)};
}

SagaTable make_saga_table(const ProblemInstance& p, const DenseVector& phi0,
                          bool track_objective) {
  SagaTable t;
  t.residuals.resize(p.n());
  t.table_average.assign(p.d(), 0.0);
  const double inv_n = 1.0 / static_cast<double>(p.n());
  for (std::size_t j = 0; j < p.n(); ++j) {
    t.residuals[j] = row_dot(p.A, j, phi0) - p.b[j];
    add_row(p.A, j, t.residuals[j] * inv_n, t.table_average);
  }
  if (track_objective)
    t.reg_terms = std::vector<double>(p.n(), p.reg.value(phi0));
  return t;
}

GradientEstimate svrg_estimate(const ProblemInstance& p, const SvrgSnapshot& snap,
                               std::size_t i, const DenseVector& x) {
  if (i >= p.n()) throw std::out_of_range("svrg_estimate: index out of range");
  const double s = row_dot(p.A, i, x) - row_dot(p.A, i, snap.x_tilde);
  GradientEstimate out;
  out.estimate = snap.mu_tilde;
  add_row(p.A, i, s, out.estimate);
  out.residual_norm_sq = s * s * p.row_norms_sq[i];
  if (p.reg.smooth_handled() && p.reg.kind == RegKind::SquaredL2) {
    const double lam = p.reg.lambda1;
    double dx_sq = 0.0;
    for (std::size_t j = 0; j < p.d(); ++j) {
      const double dj = x[j] - snap.x_tilde[j];
      out.estimate[j] += lam * dj;
      dx_sq += dj * dj;
    }
    out.residual_norm_sq += 2.0 * lam * s * s + lam * lam * dx_sq;
  }
  return out;
}

GradientEstimate saga_estimate(const ProblemInstance& p, const SagaTable& table,
                               std::size_t i, const DenseVector& x) {
  if (i >= p.n()) throw std::out_of_range("saga_estimate: index out of range");
  const double diff = (row_dot(p.A, i, x) - p.b[i]) - table.residuals[i];
  GradientEstimate out;
  out.estimate = table.table_average;
  add_row(p.A, i, diff, out.estimate);
  out.residual_norm_sq = diff * diff * p.row_norms_sq[i];
  return out;
}

void saga_update_table(SagaTable& table, const ProblemInstance& p, std::size_t i,
                       const DenseVector& new_point) {
  if (i >= p.n()) throw std::out_of_range("saga_update_table: index out of range");
  const double new_residual = row_dot(p.A, i, new_point) - p.b[i];
  const double delta = new_residual - table.residuals[i];
  table.residuals[i] = new_residual;
  add_row(p.A, i, delta / static_cast<double>(p.n()), table.table_average);
  if (table.reg_terms) (*table.reg_terms)[i] = p.reg.value(new_point);
  // Incremental updates drift; rebuild the average once per n updates.
  if (++table.updates_since_refresh >= p.n()) {
    table.updates_since_refresh = 0;
    table.table_average.assign(p.d(), 0.0);
    const double inv_n = 1.0 / static_cast<double>(p.n());
    for (std::size_t j = 0; j < p.n(); ++j)
      add_row(p.A, j, table.residuals[j] * inv_n, table.table_average);
  }
}

VarianceBound variance_bound_check(const ProblemInstance& p, const SvrgSnapshot& snap,
                                   const DenseVector& x, double f_star) {
  const DenseVector g = full_gradient(p, x);
  VarianceBound vb;
  for (std::size_t i = 0; i < p.n(); ++i) {
    const auto est = svrg_estimate(p, snap, i, x);
    double s = 0.0;
    for (std::size_t j = 0; j < p.d(); ++j) {
      const double dj = est.estimate[j] - g[j];
      s += dj * dj;
    }
    vb.lhs += s;
  }
  vb.lhs /= static_cast<double>(p.n());
  vb.rhs = 4.0 * p.lipschitz *
           (evaluate_objective(p, x) - f_star + evaluate_objective(p, snap.x_tilde) - f_star);
  return vb;
}

VarianceBound variance_bound_check(const ProblemInstance& p, const SagaTable& table,
                                   const DenseVector& x, double f_star) {
  if (!table.reg_terms)
    throw std::logic_error("variance_bound_check needs a table built with track_objective");
  const DenseVector g = f_part_gradient(p, x);
  VarianceBound vb;
  for (std::size_t i = 0; i < p.n(); ++i) {
    const auto est = saga_estimate(p, table, i, x);
    double s = 0.0;
    for (std::size_t j = 0; j < p.d(); ++j) {
      const double dj = est.estimate[j] - g[j];
      s += dj * dj;
    }
    vb.lhs += s;
  }
  vb.lhs /= static_cast<double>(p.n());
  double table_obj = 0.0;
  for (std::size_t j = 0; j < p.n(); ++j)
    table_obj += 0.5 * table.residuals[j] * table.residuals[j] + (*table.reg_terms)[j];
  table_obj /= static_cast<double>(p.n());
  vb.rhs = 4.0 * p.lipschitz * (evaluate_objective(p, x) - f_star + table_obj - f_star);
  return vb;
}

}  // namespace vrsd
