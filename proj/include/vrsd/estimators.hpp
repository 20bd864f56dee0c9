#pragma once

#include <optional>

#include "vrsd/problem.hpp"

namespace vrsd {

/// Snapshot anchor: the point x~ and its full gradient mu~, computed once per
/// epoch. Immutable once built.
struct SvrgSnapshot {
  DenseVector x_tilde;
  DenseVector mu_tilde;
};

SvrgSnapshot make_svrg_snapshot(const ProblemInstance& p, const DenseVector& x_tilde);

/// Per-sample gradient table for the SAGA estimator. Squared-loss gradients
/// are rank-1 along a_i, so one scalar residual per sample is enough:
/// grad_j(phi_j) = a_j * residuals[j]. Memory O(n + d) instead of O(n d).
struct SagaTable {
  std::vector<double> residuals;  // a_j^T phi_j - b_j
  DenseVector table_average;      // (1/n) sum_j a_j * residuals[j]
  /// r(phi_j) per entry, kept only when the variance-bound diagnostic needs
  /// the table-side objective sum. f_j(phi_j) is residuals[j]^2 / 2.
  std::optional<std::vector<double>> reg_terms;
  std::size_t updates_since_refresh = 0;
};

SagaTable make_saga_table(const ProblemInstance& p, const DenseVector& phi0,
                          bool track_objective = false);

struct GradientEstimate {
  DenseVector estimate;
  double residual_norm_sq = 0.0;  // ||p~||^2 = ||grad_i(x) - grad_i(anchor)||^2
};

GradientEstimate svrg_estimate(const ProblemInstance& p, const SvrgSnapshot& snap,
                               std::size_t i, const DenseVector& x);

/// SAGA estimate from the f-part only; a smooth-handled regularizer gradient
/// is added by the solver, matching the listing it implements.
GradientEstimate saga_estimate(const ProblemInstance& p, const SagaTable& table,
                               std::size_t i, const DenseVector& x);

void saga_update_table(SagaTable& table, const ProblemInstance& p, std::size_t i,
                       const DenseVector& new_point);

struct VarianceBound {
  double lhs = 0.0;  // exact expectation over i of ||estimate - grad f(x)||^2
  double rhs = 0.0;  // 4L * [objective gap terms]
};

VarianceBound variance_bound_check(const ProblemInstance& p, const SvrgSnapshot& snap,
                                   const DenseVector& x, double f_star);
VarianceBound variance_bound_check(const ProblemInstance& p, const SagaTable& table,
                                   const DenseVector& x, double f_star);

}  // namespace vrsd
