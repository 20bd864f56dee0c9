#include "vrsd/sufficient_decrease.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace vrsd {

double zeta(double eta, double lipschitz, double delta) {
  if (eta <= 0.0 || lipschitz <= 0.0 || delta <= 0.0)
    throw std::invalid_argument("zeta: eta, L and delta must be positive");
  if (lipschitz * eta >= 1.0)
    throw std::invalid_argument("zeta: requires L*eta < 1 (alpha must exceed 1)");
  return delta * eta / (1.0 - lipschitz * eta);
}

ThetaInputs compute_theta_inputs(const ProblemInstance& p, const DenseVector& x,
                                 bool use_rank_r) {
  ThetaInputs in;
  in.btax = dot(p.bta, x);
  in.ax_norm_sq = norm_ax_sq(p, x, use_rank_r);
  in.x_norm_l1 = norm_l1(x);
  in.x_norm_sq = norm_sq(x);
  return in;
}

namespace {

double n_of(const ProblemInstance& p) { return static_cast<double>(p.n()); }

double ridge_theta(const ThetaInputs& in, double n, double rns, double zeta, double lambda,
                   bool* degenerate = nullptr) {
  const double denom = in.ax_norm_sq / n + zeta * rns + lambda * in.x_norm_sq;
  if (denom == 0.0) {
    if (degenerate) *degenerate = true;
    return 1.0;
  }
  return (in.btax / n + zeta * rns) / denom;
}

double lasso_theta(const ThetaInputs& in, double n, double rns, double zeta, double lambda,
                   bool* degenerate = nullptr) {
  const double denom = in.ax_norm_sq / n + zeta * rns;
  if (denom == 0.0) {
    if (degenerate) *degenerate = true;
    return 1.0;
  }
  const double tau = lambda * in.x_norm_l1 / denom;
  return soft_threshold((in.btax / n + zeta * rns) / denom, tau);
}

double elastic_net_theta(const ThetaInputs& in, double n, double rns, double zeta,
                         double lambda1, double lambda2, bool* degenerate = nullptr) {
  const double denom = in.ax_norm_sq / n + zeta * rns + lambda2 * in.x_norm_sq;
  if (denom == 0.0) {
    if (degenerate) *degenerate = true;
    return 1.0;
  }
  const double tau = lambda1 * in.x_norm_l1 / denom;
  return soft_threshold((in.btax / n + zeta * rns) / denom, tau);
}

double reg_value_scaled(const Regularizer& reg, const ThetaInputs& in, double theta) {
  switch (reg.kind) {
    case RegKind::None:
      return 0.0;
    case RegKind::L1:
      return reg.lambda1 * std::abs(theta) * in.x_norm_l1;
    case RegKind::SquaredL2:
      return 0.5 * reg.lambda1 * theta * theta * in.x_norm_sq;
    case RegKind::ElasticNet:
      return reg.lambda1 * std::abs(theta) * in.x_norm_l1 +
             0.5 * reg.lambda2 * theta * theta * in.x_norm_sq;
  }
  return 0.0;
}

// F(theta x) from cached scalars; ax_norm_sq must be the exact one here.
double objective_scaled(const ProblemInstance& p, const ThetaInputs& in, double theta) {
  const double n = n_of(p);
  const double quad =
      (theta * theta * in.ax_norm_sq - 2.0 * theta * in.btax + p.b_norm_sq) / (2.0 * n);
  return quad + reg_value_scaled(p.reg, in, theta);
}

}  // namespace

double theta_ridge(const ProblemInstance& p, const DenseVector& x, double residual_norm_sq,
                   double zeta, double lambda, bool use_rank_r) {
  return ridge_theta(compute_theta_inputs(p, x, use_rank_r), n_of(p), residual_norm_sq, zeta,
                     lambda);
}

double theta_lasso(const ProblemInstance& p, const DenseVector& x, double residual_norm_sq,
                   double zeta, double lambda, bool use_rank_r) {
  return lasso_theta(compute_theta_inputs(p, x, use_rank_r), n_of(p), residual_norm_sq, zeta,
                     lambda);
}

double theta_elastic_net(const ProblemInstance& p, const DenseVector& x,
                         double residual_norm_sq, double zeta, double lambda1, double lambda2,
                         bool use_rank_r) {
  return elastic_net_theta(compute_theta_inputs(p, x, use_rank_r), n_of(p), residual_norm_sq,
                           zeta, lambda1, lambda2);
}

ThetaSolution solve_theta(const ProblemInstance& p, const DenseVector& x,
                          double residual_norm_sq, double zeta, bool use_rank_r) {
  const ThetaInputs in = compute_theta_inputs(p, x, use_rank_r);
  const double n = n_of(p);
  ThetaSolution sol;
  sol.residual_norm_sq = residual_norm_sq;
  switch (p.reg.kind) {
    case RegKind::None:
      sol.theta = ridge_theta(in, n, residual_norm_sq, zeta, 0.0, &sol.degenerate);
      break;
    case RegKind::SquaredL2:
      sol.theta = ridge_theta(in, n, residual_norm_sq, zeta, p.reg.lambda1, &sol.degenerate);
      break;
    case RegKind::L1:
      sol.theta = lasso_theta(in, n, residual_norm_sq, zeta, p.reg.lambda1, &sol.degenerate);
      break;
    case RegKind::ElasticNet:
      sol.theta = elastic_net_theta(in, n, residual_norm_sq, zeta, p.reg.lambda1,
                                    p.reg.lambda2, &sol.degenerate);
      break;
  }
  // Property-1 bookkeeping always uses the exact ||Ax||^2.
  ThetaInputs exact = in;
  if (use_rank_r) exact.ax_norm_sq = norm_ax_sq(p, x, false);
  sol.objective_at_theta = objective_scaled(p, exact, sol.theta);
  const double one_minus = 1.0 - sol.theta;
  sol.sd_bound =
      objective_scaled(p, exact, 1.0) - 0.5 * zeta * one_minus * one_minus * residual_norm_sq;
  return sol;
}

double theta_grid_oracle(const ProblemInstance& p, const DenseVector& x,
                         double residual_norm_sq, double zeta, const SdConfig& cfg) {
  if (cfg.grid_points < 2) throw std::invalid_argument("grid oracle needs >= 2 points");
  const ThetaInputs in = compute_theta_inputs(p, x, /*use_rank_r=*/false);
  const double step = (cfg.theta_max - cfg.theta_min) / static_cast<double>(cfg.grid_points - 1);
  double best_theta = cfg.theta_min;
  double best_g = std::numeric_limits<double>::infinity();
  std::size_t best_idx = 0;
  for (std::size_t k = 0; k < cfg.grid_points; ++k) {
    const double theta = cfg.theta_min + step * static_cast<double>(k);
    const double one_minus = 1.0 - theta;
    const double g = objective_scaled(p, in, theta) +
                     0.5 * zeta * one_minus * one_minus * residual_norm_sq;
    bool better = g < best_g;
    if (g == best_g) {
      const double cur = std::abs(theta - 1.0), prev = std::abs(best_theta - 1.0);
      better = cur < prev || (cur == prev && theta < best_theta);
    }
    if (better) {
      best_g = g;
      best_theta = theta;
      best_idx = k;
    }
  }
  if (best_idx == 0 || best_idx == cfg.grid_points - 1)
    throw std::runtime_error("theta_grid_oracle: minimizer at bracket boundary");
  return best_theta;
}

std::vector<std::size_t> sd_schedule(Rng& rng, std::size_t m, std::size_t m1) {
  if (m1 > m) throw std::invalid_argument("sd_schedule: m1 must not exceed m");
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < m1; ++i)
    std::swap(idx[i], idx[i + rng.uniform_index(m - i)]);
  idx.resize(m1);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace vrsd
