#pragma once

#include <cstdint>
#include <vector>

#include "vrsd/problem.hpp"
#include "vrsd/rng.hpp"

namespace vrsd {

struct SdConfig {
  double delta = 0.1;
  std::size_t m1 = 0;        // SD-enabled iterations per epoch
  bool use_rank_r = false;   // approximate ||Ax||^2 via the cached SVD factors
  double theta_min = -10.0;  // grid-oracle bracket
  double theta_max = 10.0;
  std::size_t grid_points = 200001;  // 1e-4 resolution over [-10, 10]
};

/// Solution of the scaling subproblem, with the quantities Property-1 style
/// checks need.
struct ThetaSolution {
  double theta = 1.0;
  double residual_norm_sq = 0.0;
  double objective_at_theta = 0.0;  // F(theta * x)
  double sd_bound = 0.0;            // F(x) - zeta*(1-theta)^2*||p~||^2 / 2
  bool degenerate = false;          // zero denominator; theta forced to 1
};

/// delta * eta / (1 - L*eta). Requires L*eta < 1.
double zeta(double eta, double lipschitz, double delta);

/// Scalar summaries of (p, x) that every theta formula consumes.
struct ThetaInputs {
  double btax = 0.0;        // b^T A x (from the cached b^T A vector)
  double ax_norm_sq = 0.0;  // ||A x||^2, exact or rank-r approximate
  double x_norm_l1 = 0.0;
  double x_norm_sq = 0.0;
};

ThetaInputs compute_theta_inputs(const ProblemInstance& p, const DenseVector& x,
                                 bool use_rank_r);

double theta_ridge(const ProblemInstance& p, const DenseVector& x, double residual_norm_sq,
                   double zeta, double lambda, bool use_rank_r = false);
double theta_lasso(const ProblemInstance& p, const DenseVector& x, double residual_norm_sq,
                   double zeta, double lambda, bool use_rank_r = false);
double theta_elastic_net(const ProblemInstance& p, const DenseVector& x,
                         double residual_norm_sq, double zeta, double lambda1, double lambda2,
                         bool use_rank_r = false);

/// Closed-form theta for the problem's own regularizer, plus the Property-1
/// bookkeeping (objective and bound evaluated with the exact ||Ax||^2).
ThetaSolution solve_theta(const ProblemInstance& p, const DenseVector& x,
                          double residual_norm_sq, double zeta, bool use_rank_r = false);

/// Brute-force minimizer of F(theta x) + zeta*(1-theta)^2*||p~||^2 / 2 over a
/// uniform grid. Ties break toward the theta nearest 1, then the smaller one.
double theta_grid_oracle(const ProblemInstance& p, const DenseVector& x,
                         double residual_norm_sq, double zeta, const SdConfig& cfg);

/// m1 distinct iteration indices in [0, m), sorted; deterministic per rng state.
std::vector<std::size_t> sd_schedule(Rng& rng, std::size_t m, std::size_t m1);

}  // namespace vrsd
