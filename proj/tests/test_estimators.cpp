#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "vrsd/estimators.hpp"
#include "vrsd/reference.hpp"
#include "vrsd/synthetic.hpp"

using namespace vrsd;
using vrsd_test::random_problem;
using vrsd_test::random_vector;

namespace {

// Shadow table storing whole gradient vectors, the O(nd) implementation the
// scalar-residual table must reproduce.
struct ShadowTable {
  std::vector<DenseVector> grads;
  DenseVector average;

  ShadowTable(const ProblemInstance& p, const DenseVector& phi0) {
    grads.reserve(p.n());
    average.assign(p.d(), 0.0);
    for (std::size_t j = 0; j < p.n(); ++j) {
      grads.push_back(f_grad(p, j, phi0));
      axpy(1.0 / static_cast<double>(p.n()), grads.back(), average);
    }
  }

  static DenseVector f_grad(const ProblemInstance& p, std::size_t j, const DenseVector& x) {
    const double r = row_dot(p.A, j, x) - p.b[j];
    DenseVector g(p.d(), 0.0);
    for (std::size_t k = p.A.row_ptr[j]; k < p.A.row_ptr[j + 1]; ++k)
      g[p.A.col_idx[k]] = p.A.values[k] * r;
    return g;
  }

  DenseVector estimate(const ProblemInstance& p, std::size_t i, const DenseVector& x) const {
    DenseVector e = f_grad(p, i, x);
    axpy(-1.0, grads[i], e);
    axpy(1.0, average, e);
    return e;
  }

  void update(const ProblemInstance& p, std::size_t i, const DenseVector& point) {
    const DenseVector g = f_grad(p, i, point);
    axpy(-1.0 / static_cast<double>(p.n()), grads[i], average);
    axpy(1.0 / static_cast<double>(p.n()), g, average);
    grads[i] = g;
  }
};

DenseVector f_part_full(const ProblemInstance& p, const DenseVector& x) {
  DenseVector g(p.d(), 0.0);
  for (std::size_t i = 0; i < p.n(); ++i)
    axpy(1.0 / static_cast<double>(p.n()), ShadowTable::f_grad(p, i, x), g);
  return g;
}

}  // namespace

TEST_CASE("svrg_estimate at the snapshot point") {
  Rng rng(1);
  const auto p = random_problem(rng, 6, 4, Regularizer::l1(0.01));
  const DenseVector xt = random_vector(rng, 4);
  const SvrgSnapshot snap = make_svrg_snapshot(p, xt);
  CHECK(max_abs_diff(snap.mu_tilde, full_gradient(p, xt)) <= 1e-12);
  for (std::size_t i = 0; i < p.n(); ++i) {
    const auto est = svrg_estimate(p, snap, i, xt);
    CHECK(max_abs_diff(est.estimate, snap.mu_tilde) <= 1e-12);
    CHECK(est.residual_norm_sq == 0.0);
  }
  CHECK_THROWS_AS(svrg_estimate(p, snap, 99, xt), std::out_of_range);
}

TEST_CASE("svrg_estimate matches three-term direct computation") {
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    const bool smooth = t % 2 == 0;
    const auto p = random_problem(
        rng, 5, 3,
        smooth ? Regularizer::squared_l2(0.2, RegHandling::SmoothGradient)
               : Regularizer::none());
    const DenseVector xt = random_vector(rng, 3);
    const DenseVector x = random_vector(rng, 3);
    const SvrgSnapshot snap = make_svrg_snapshot(p, xt);
    for (std::size_t i = 0; i < p.n(); ++i) {
      const auto est = svrg_estimate(p, snap, i, x);
      DenseVector direct = component_gradient(p, i, x);
      axpy(-1.0, component_gradient(p, i, xt), direct);
      const double rns = norm_sq(direct);
      axpy(1.0, snap.mu_tilde, direct);
      CHECK(max_abs_diff(est.estimate, direct) <= 1e-12);
      CHECK(est.residual_norm_sq == doctest::Approx(rns).epsilon(1e-10));
    }
  }
}

TEST_CASE("estimator unbiasedness, exact enumeration") {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto p = random_problem(rng, 4 + rng.uniform_index(6), 3, Regularizer::l1(0.05), 0.7);
    const DenseVector xt = random_vector(rng, 3);
    const DenseVector x = random_vector(rng, 3);
    const SvrgSnapshot snap = make_svrg_snapshot(p, xt);
    const SagaTable table = make_saga_table(p, xt);
    const DenseVector g = full_gradient(p, x);

    DenseVector svrg_mean(3, 0.0), saga_mean(3, 0.0);
    const double inv_n = 1.0 / static_cast<double>(p.n());
    for (std::size_t i = 0; i < p.n(); ++i) {
      axpy(inv_n, svrg_estimate(p, snap, i, x).estimate, svrg_mean);
      axpy(inv_n, saga_estimate(p, table, i, x).estimate, saga_mean);
    }
    CHECK(max_abs_diff(svrg_mean, g) <= 1e-12);
    CHECK(max_abs_diff(saga_mean, g) <= 1e-12);  // L1 is prox-handled: g is the f-part
  }
}

TEST_CASE("fresh saga table gives the full gradient") {
  Rng rng(4);
  const auto p = random_problem(rng, 6, 4, Regularizer::none());
  const DenseVector x = random_vector(rng, 4);
  const SagaTable table = make_saga_table(p, x);
  CHECK(max_abs_diff(table.table_average, full_gradient(p, x)) <= 1e-12);
  for (std::size_t i = 0; i < p.n(); ++i) {
    const auto est = saga_estimate(p, table, i, x);
    CHECK(max_abs_diff(est.estimate, table.table_average) <= 1e-12);
    CHECK(est.residual_norm_sq == 0.0);
  }
}

TEST_CASE("saga_update_table semantics") {
  Rng rng(5);
  const auto p = random_problem(rng, 8, 4, Regularizer::none());
  const DenseVector x0 = random_vector(rng, 4);
  SagaTable table = make_saga_table(p, x0);

  // idempotence
  const DenseVector pt = random_vector(rng, 4);
  saga_update_table(table, p, 2, pt);
  const SagaTable snapshot = table;
  saga_update_table(table, p, 2, pt);
  CHECK(table.residuals == snapshot.residuals);
  CHECK(max_abs_diff(table.table_average, snapshot.table_average) <= 1e-12);

  // update every index at a new point -> average equals the f-part gradient
  const DenseVector z = random_vector(rng, 4);
  for (std::size_t j = 0; j < p.n(); ++j) saga_update_table(table, p, j, z);
  CHECK(max_abs_diff(table.table_average, f_part_full(p, z)) <= 1e-10);
}

TEST_CASE("scalar-residual table tracks the shadow implementation") {
  Rng rng(6);
  const auto p = random_problem(rng, 12, 5, Regularizer::none(), 0.7);
  const DenseVector x0 = random_vector(rng, 5);
  SagaTable table = make_saga_table(p, x0);
  ShadowTable shadow(p, x0);

  for (int t = 0; t < 1000; ++t) {
    const std::size_t i = rng.uniform_index(p.n());
    const DenseVector x = random_vector(rng, 5);
    const auto est = saga_estimate(p, table, i, x);
    CHECK(max_abs_diff(est.estimate, shadow.estimate(p, i, x)) <= 1e-12);
    saga_update_table(table, p, i, x);
    shadow.update(p, i, x);
  }
  CHECK(max_abs_diff(table.table_average, shadow.average) <= 1e-8);
}

TEST_CASE("table_average drift stays within the refresh bound") {
  Rng rng(7);
  const auto p = random_problem(rng, 10, 4, Regularizer::none());
  SagaTable table = make_saga_table(p, DenseVector(4, 0.0));
  for (int t = 0; t < 5000; ++t)
    saga_update_table(table, p, rng.uniform_index(10), random_vector(rng, 4));
  DenseVector scratch(4, 0.0);
  const auto rows = p.A.to_dense();
  for (std::size_t j = 0; j < p.n(); ++j)
    axpy(table.residuals[j] / 10.0, rows[j], scratch);
  CHECK(max_abs_diff(table.table_average, scratch) <= 1e-8);
}

TEST_CASE("variance bound at trivial configurations") {
  Rng rng(8);
  const auto p = random_problem(rng, 6, 3, Regularizer::none());
  const ReferenceOptimum ref = compute_reference_optimum(p, 300);
  REQUIRE(ref.converged);

  // x = x_tilde = x*: lhs = 0, rhs ~ 0
  const SvrgSnapshot at_opt = make_svrg_snapshot(p, ref.x_star);
  auto vb = variance_bound_check(p, at_opt, ref.x_star, ref.f_star);
  CHECK(vb.lhs <= 1e-18);
  CHECK(vb.rhs >= -1e-12);

  // x = x_tilde != x*: estimator exact at the snapshot, rhs strictly positive
  const DenseVector x = random_vector(rng, 3);
  const SvrgSnapshot snap = make_svrg_snapshot(p, x);
  vb = variance_bound_check(p, snap, x, ref.f_star);
  CHECK(vb.lhs <= 1e-18);
  CHECK(vb.rhs > 0.0);
  CHECK(vb.lhs <= vb.rhs * (1.0 + 1e-9));
}

TEST_CASE("saga variance bound requires the objective-tracking table") {
  Rng rng(9);
  const auto p = random_problem(rng, 5, 3, Regularizer::none());
  const SagaTable bare = make_saga_table(p, DenseVector(3, 0.0));
  CHECK_THROWS_AS(variance_bound_check(p, bare, DenseVector(3, 0.0), 0.0), std::logic_error);

  const SagaTable tracked = make_saga_table(p, DenseVector(3, 0.0), true);
  const ReferenceOptimum ref = compute_reference_optimum(p, 300);
  const auto vb = variance_bound_check(p, tracked, random_vector(rng, 3), ref.f_star);
  CHECK(vb.lhs <= vb.rhs * (1.0 + 1e-9));
}
