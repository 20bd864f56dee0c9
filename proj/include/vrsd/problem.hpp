#pragma once

#include <optional>
#include <stdexcept>

#include "vrsd/sparse.hpp"
#include "vrsd/svd.hpp"

namespace vrsd {

enum class RegKind { None, L1, SquaredL2, ElasticNet };
enum class RegHandling { Proximal, SmoothGradient };

/// r(x): None, lambda1*||x||_1, (lambda1/2)*||x||^2, or
/// lambda1*||x||_1 + (lambda2/2)*||x||^2.
struct Regularizer {
  RegKind kind = RegKind::None;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  RegHandling handling = RegHandling::Proximal;

  static Regularizer none() { return {}; }
  static Regularizer l1(double lambda) { return {RegKind::L1, lambda, 0.0, RegHandling::Proximal}; }
  static Regularizer squared_l2(double lambda,
                                RegHandling handling = RegHandling::Proximal) {
    return {RegKind::SquaredL2, lambda, 0.0, handling};
  }
  static Regularizer elastic_net(double lambda1, double lambda2) {
    return {RegKind::ElasticNet, lambda1, lambda2, RegHandling::Proximal};
  }

  void check() const {
    if (lambda1 < 0.0 || lambda2 < 0.0)
      throw std::invalid_argument("regularizer weights must be nonnegative");
    if (handling == RegHandling::SmoothGradient &&
        (kind == RegKind::L1 || kind == RegKind::ElasticNet))
      throw std::invalid_argument("smooth handling requires a differentiable regularizer");
  }

  double value(const DenseVector& x) const;
  /// Adds the gradient of r to g; only valid for differentiable kinds.
  void add_gradient(const DenseVector& x, DenseVector& g) const;
  bool smooth_handled() const { return handling == RegHandling::SmoothGradient; }
};

/// Squared loss f_i(x) = (1/2)(a_i^T x - b_i)^2 plus a simple regularizer,
/// with the cached quantities every solver needs: b^T A, row norms, ||b||^2,
/// an optional truncated SVD of A, and the Lipschitz bound.
struct ProblemInstance {
  SparseMatrix A;
  DenseVector b;
  Regularizer reg;
  DenseVector bta;           // b^T A, length d
  DenseVector row_norms_sq;  // ||a_i||^2, length n
  double b_norm_sq = 0.0;
  std::optional<RankRFactors> svd;
  double lipschitz = 0.0;

  std::size_t n() const { return A.n_rows; }
  std::size_t d() const { return A.n_cols; }

  static ProblemInstance create(SparseMatrix A, DenseVector b, Regularizer reg,
                                std::size_t svd_rank = 0,
                                double energy_threshold = 0.995);
};

DenseVector component_gradient(const ProblemInstance& p, std::size_t i, const DenseVector& x);
DenseVector full_gradient(const ProblemInstance& p, const DenseVector& x);
double evaluate_objective(const ProblemInstance& p, const DenseVector& x);
DenseVector prox_step(const ProblemInstance& p, const DenseVector& y, double eta);
double lipschitz_bound(const ProblemInstance& p);

/// ||A x||^2 exactly, or via the cached rank-r factors when requested.
double norm_ax_sq(const ProblemInstance& p, const DenseVector& x, bool use_rank_r);

}  // namespace vrsd
