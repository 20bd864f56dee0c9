#include "vrsd/solvers.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace vrsd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct StepCounters {
  std::size_t component_grads = 0;
  std::size_t full_grads = 0;
};

double resolve_eta(const ProblemInstance& p, const SolverConfig& cfg) {
  if (cfg.eta > 0.0) return cfg.eta;
  if (cfg.alpha < 1.0) throw std::invalid_argument("alpha must be >= 1");
  return 1.0 / (p.lipschitz * cfg.alpha);
}

std::size_t resolve_m(const ProblemInstance& p, const SolverConfig& cfg) {
  if (cfg.m > 0) return cfg.m;
  switch (cfg.algorithm) {
    case Algorithm::SagaSd:
    case Algorithm::Saga:
    case Algorithm::SagaSdi:
      return p.n();
    default:
      return 2 * p.n();
  }
}

std::size_t resolve_m1(const SolverConfig& cfg, std::size_t m) {
  return cfg.sd_default_m1 ? m / 1000 : cfg.sd.m1;
}

// One inner step: backward (prox) for prox-handled regularizers, forward
// otherwise. `estimate` must already carry any smooth regularizer gradient.
DenseVector apply_step(const ProblemInstance& p, const DenseVector& x, double eta,
                       const DenseVector& estimate) {
  DenseVector y(x);
  axpy(-eta, estimate, y);
  if (p.reg.handling == RegHandling::Proximal && p.reg.kind != RegKind::None)
    return prox_step(p, y, eta);
  return y;
}

class TraceBuilder {
 public:
  TraceBuilder(const ProblemInstance& p, const SolverConfig& cfg)
      : p_(p), cfg_(cfg), t0_(Clock::now()) {
    trace_.algorithm = algorithm_name(cfg.algorithm);
    trace_.rng_id = kRngId;
    trace_.seed = cfg.seed;
  }

  void record(std::size_t epoch, const StepCounters& c, const DenseVector& point) {
    const double obj = evaluate_objective(p_, point);
    trace_.records.push_back({epoch, effective_passes(c.component_grads, c.full_grads, p_.n()),
                              seconds_since(t0_), obj});
    if (epoch == 0) initial_objective_ = obj;
    if (!std::isfinite(obj) ||
        obj > cfg_.divergence_factor * std::max(initial_objective_, 1e-300))
      throw DivergenceError("solver diverged at epoch " + std::to_string(epoch),
                            std::move(trace_));
  }

  void maybe_log_iterate(const DenseVector& x) {
    if (cfg_.record_iterates) trace_.iterates.push_back(x);
  }
  void maybe_log_theta(const ThetaSolution& ts) {
    if (cfg_.record_theta_checks) trace_.theta_log.push_back(ts);
  }

  Trace take() { return std::move(trace_); }

 private:
  const ProblemInstance& p_;
  const SolverConfig& cfg_;
  Clock::time_point t0_;
  Trace trace_;
  double initial_objective_ = 0.0;
};

}  // namespace

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::SvrgSd: return "svrg-sd";
    case Algorithm::SagaSd: return "saga-sd";
    case Algorithm::SvrgI: return "svrg-i";
    case Algorithm::SvrgII: return "svrg-ii";
    case Algorithm::ProxSvrg: return "prox-svrg";
    case Algorithm::SvrgSdi: return "svrg-sdi";
    case Algorithm::SagaSdi: return "saga-sdi";
    case Algorithm::Saga: return "saga";
  }
  return "?";
}

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "svrg-sd") return Algorithm::SvrgSd;
  if (name == "saga-sd") return Algorithm::SagaSd;
  if (name == "svrg-i") return Algorithm::SvrgI;
  if (name == "svrg-ii") return Algorithm::SvrgII;
  if (name == "prox-svrg") return Algorithm::ProxSvrg;
  if (name == "svrg-sdi") return Algorithm::SvrgSdi;
  if (name == "saga-sdi") return Algorithm::SagaSdi;
  if (name == "saga") return Algorithm::Saga;
  throw std::invalid_argument("unknown algorithm: " + name);
}

DenseVector momentum_combine(const DenseVector& y, const DenseVector& x_hat,
                             const DenseVector& x_hat_prev, double sigma) {
  check_same_size(y, x_hat);
  check_same_size(y, x_hat_prev);
  DenseVector out(y);
  const double c = 1.0 - sigma;
  for (std::size_t j = 0; j < y.size(); ++j) out[j] += c * (x_hat[j] - x_hat_prev[j]);
  return out;
}

double effective_passes(std::size_t component_grads, std::size_t full_grads, std::size_t n) {
  if (n == 0) throw std::invalid_argument("effective_passes: n must be positive");
  return static_cast<double>(component_grads) / static_cast<double>(n) +
         static_cast<double>(full_grads);
}

double sdi_sigma_svrg(double lambda, Mode mode, std::size_t epochs, bool log10_base) {
  if (mode == Mode::NSC) return 1.0 / (static_cast<double>(epochs) + 3.0);
  if (lambda <= 0.0)
    throw std::invalid_argument("sdi sigma formula needs a positive regularization weight");
  const double lg = log10_base ? std::log10(6.0 * lambda) : std::log(6.0 * lambda);
  return 0.618 - 0.382 / (1.0 + std::exp(-lg - 12.0));
}

double sdi_sigma_saga(double lambda, bool log10_base) {
  if (lambda <= 0.0)
    throw std::invalid_argument("sdi sigma formula needs a positive regularization weight");
  const double lg = log10_base ? std::log10(lambda) : std::log(lambda);
  return 0.5 - 0.5 / (1.0 + std::exp(-lg - 12.0));
}

SolveResult run_svrg_sd(const ProblemInstance& p, const SolverConfig& cfg) {
  return run_solver(p, cfg, DenseVector(p.d(), 0.0));
}
SolveResult run_saga_sd(const ProblemInstance& p, const SolverConfig& cfg) {
  return run_solver(p, cfg, DenseVector(p.d(), 0.0));
}
SolveResult run_svrg_baseline(const ProblemInstance& p, const SolverConfig& cfg) {
  return run_solver(p, cfg, DenseVector(p.d(), 0.0));
}
SolveResult run_svrg_sdi(const ProblemInstance& p, const SolverConfig& cfg) {
  return run_solver(p, cfg, DenseVector(p.d(), 0.0));
}
SolveResult run_saga_sdi(const ProblemInstance& p, const SolverConfig& cfg) {
  return run_solver(p, cfg, DenseVector(p.d(), 0.0));
}
SolveResult run_saga(const ProblemInstance& p, const SolverConfig& cfg) {
  return run_solver(p, cfg, DenseVector(p.d(), 0.0));
}

namespace {

SolveResult solve_svrg_sd(const ProblemInstance& p, const SolverConfig& cfg,
                          const DenseVector& x0) {
  const double eta = resolve_eta(p, cfg);
  const double zeta_val = zeta(eta, p.lipschitz, cfg.sd.delta);
  const std::size_t m = resolve_m(p, cfg);
  const std::size_t m1 = resolve_m1(cfg, m);
  const double sigma = cfg.sigma;
  if (sigma < 0.0 || sigma > 1.0) throw std::invalid_argument("sigma must lie in [0, 1]");
  if (cfg.mode == Mode::NSC && sigma == 0.0)
    throw std::invalid_argument("NSC mode requires sigma > 0");

  Rng idx_rng(cfg.seed);
  Rng sched_rng(split_seed(cfg.seed, 1));
  TraceBuilder tb(p, cfg);
  StepCounters c;

  DenseVector x_tilde(x0), y_tilde(x0);
  DenseVector snapshot_sum(p.d(), 0.0);
  tb.record(0, c, x_tilde);

  for (std::size_t s = 1; s <= cfg.epochs; ++s) {
    DenseVector x = (cfg.mode == Mode::SC) ? x_tilde : y_tilde;
    DenseVector x_hat_prev(x);
    const SvrgSnapshot snap = make_svrg_snapshot(p, x_tilde);
    ++c.full_grads;
    const auto schedule = sd_schedule(sched_rng, m, m1);
    std::size_t next_sd = 0;
    DenseVector x_hat_sum(p.d(), 0.0);

    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t i = idx_rng.uniform_index(p.n());
      const GradientEstimate est = svrg_estimate(p, snap, i, x);
      ++c.component_grads;
      const DenseVector y = apply_step(p, x, eta, est.estimate);
      double theta = 1.0;
      if (next_sd < schedule.size() && schedule[next_sd] == k) {
        ++next_sd;
        const ThetaSolution ts = solve_theta(p, x, est.residual_norm_sq, zeta_val,
                                             cfg.sd.use_rank_r);
        theta = ts.theta;
        tb.maybe_log_theta(ts);
      }
      DenseVector x_hat = (theta == 1.0) ? x : scaled(x, theta);
      x = momentum_combine(y, x_hat, x_hat_prev, sigma);
      axpy(1.0, x_hat, x_hat_sum);
      x_hat_prev = std::move(x_hat);
      tb.maybe_log_iterate(x);
    }

    x_tilde = scaled(x_hat_sum, 1.0 / static_cast<double>(m));
    if (cfg.mode == Mode::NSC) {
      y_tilde = x;
      axpy(-(1.0 - sigma), x_hat_prev, y_tilde);
      scale(y_tilde, 1.0 / sigma);
    }
    axpy(1.0, x_tilde, snapshot_sum);
    tb.record(s, c, x_tilde);
  }

  DenseVector solution = x_tilde;
  if (cfg.mode == Mode::NSC && cfg.epochs > 0) {
    // Output rule: the epoch average wins when it has the lower objective.
    const DenseVector avg = scaled(snapshot_sum, 1.0 / static_cast<double>(cfg.epochs));
    if (evaluate_objective(p, x_tilde) > evaluate_objective(p, avg)) solution = avg;
  }
  return {std::move(solution), tb.take()};
}

SolveResult solve_saga_sd(const ProblemInstance& p, const SolverConfig& cfg,
                          const DenseVector& x0) {
  const double eta = resolve_eta(p, cfg);
  const double zeta_val = zeta(eta, p.lipschitz, cfg.sd.delta);
  const std::size_t m = resolve_m(p, cfg);
  const std::size_t m1 = resolve_m1(cfg, m);
  const double sigma = cfg.sigma;
  if (sigma < 0.0 || sigma > 1.0) throw std::invalid_argument("sigma must lie in [0, 1]");

  Rng idx_rng(cfg.seed);
  Rng sched_rng(split_seed(cfg.seed, 1));
  TraceBuilder tb(p, cfg);
  StepCounters c;

  DenseVector x_tilde(x0);
  SagaTable table = make_saga_table(p, x0);
  ++c.full_grads;
  tb.record(0, c, x_tilde);

  for (std::size_t s = 1; s <= cfg.epochs; ++s) {
    DenseVector x = x_tilde;
    DenseVector x_hat_prev(x);
    const auto schedule = sd_schedule(sched_rng, m, m1);
    std::size_t next_sd = 0;
    DenseVector x_hat_sum(p.d(), 0.0);

    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t i = idx_rng.uniform_index(p.n());
      GradientEstimate est = saga_estimate(p, table, i, x);  // uses the old entry
      ++c.component_grads;
      saga_update_table(table, p, i, x);
      if (p.reg.smooth_handled()) p.reg.add_gradient(x, est.estimate);
      const DenseVector y = apply_step(p, x, eta, est.estimate);
      double theta = 1.0;
      if (next_sd < schedule.size() && schedule[next_sd] == k) {
        ++next_sd;
        const ThetaSolution ts = solve_theta(p, x, est.residual_norm_sq, zeta_val,
                                             cfg.sd.use_rank_r);
        theta = ts.theta;
        tb.maybe_log_theta(ts);
      }
      DenseVector x_hat = (theta == 1.0) ? x : scaled(x, theta);
      x = momentum_combine(y, x_hat, x_hat_prev, sigma);
      axpy(1.0, x_hat, x_hat_sum);
      x_hat_prev = std::move(x_hat);
      tb.maybe_log_iterate(x);
    }

    x_tilde = scaled(x_hat_sum, 1.0 / static_cast<double>(m));
    tb.record(s, c, x_tilde);
  }
  return {std::move(x_tilde), tb.take()};
}

SolveResult solve_svrg_family(const ProblemInstance& p, const SolverConfig& cfg,
                              const DenseVector& x0) {
  const double eta = resolve_eta(p, cfg);
  const std::size_t m = resolve_m(p, cfg);
  Rng idx_rng(cfg.seed);
  TraceBuilder tb(p, cfg);
  StepCounters c;

  DenseVector x_tilde(x0);
  DenseVector x(x0);
  tb.record(0, c, x_tilde);

  for (std::size_t s = 1; s <= cfg.epochs; ++s) {
    const SvrgSnapshot snap = make_svrg_snapshot(p, x_tilde);
    ++c.full_grads;
    if (cfg.algorithm != Algorithm::SvrgSdi) x = x_tilde;
    DenseVector sum(p.d(), 0.0);
    const double sigma = (cfg.algorithm == Algorithm::SvrgSdi)
                             ? (cfg.sigma_from_formula
                                    ? sdi_sigma_svrg(p.reg.lambda1, cfg.mode, cfg.epochs,
                                                     cfg.sigma_log10)
                                    : cfg.sigma)
                             : 0.0;

    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t i = idx_rng.uniform_index(p.n());
      const GradientEstimate est = svrg_estimate(p, snap, i, x);
      ++c.component_grads;
      if (cfg.algorithm == Algorithm::ProxSvrg) axpy(1.0, x, sum);  // averages x_{k-1}
      if (cfg.algorithm == Algorithm::SvrgSdi) {
        DenseVector x_prev = x;
        x = apply_step(p, x, eta, est.estimate);
        for (std::size_t j = 0; j < p.d(); ++j)
          sum[j] += x[j] + (1.0 - sigma) * (x[j] - x_prev[j]);
      } else {
        x = apply_step(p, x, eta, est.estimate);
        if (cfg.algorithm == Algorithm::SvrgII) axpy(1.0, x, sum);
      }
      tb.maybe_log_iterate(x);
    }

    switch (cfg.algorithm) {
      case Algorithm::SvrgI:
        x_tilde = x;
        break;
      case Algorithm::SvrgII:
      case Algorithm::ProxSvrg:
      case Algorithm::SvrgSdi:
        x_tilde = scaled(sum, 1.0 / static_cast<double>(m));
        break;
      default:
        throw std::logic_error("unexpected algorithm in svrg family loop");
    }
    tb.record(s, c, x_tilde);
  }
  return {std::move(x_tilde), tb.take()};
}

SolveResult solve_saga_family(const ProblemInstance& p, const SolverConfig& cfg,
                              const DenseVector& x0) {
  const double eta = resolve_eta(p, cfg);
  const std::size_t m = resolve_m(p, cfg);
  const bool with_momentum = cfg.algorithm == Algorithm::SagaSdi;
  const double sigma = with_momentum
                           ? (cfg.sigma_from_formula
                                  ? sdi_sigma_saga(p.reg.lambda1, cfg.sigma_log10)
                                  : cfg.sigma)
                           : 1.0;

  Rng idx_rng(cfg.seed);
  TraceBuilder tb(p, cfg);
  StepCounters c;

  DenseVector x(x0);
  SagaTable table = make_saga_table(p, x0);
  ++c.full_grads;
  tb.record(0, c, x);

  for (std::size_t s = 1; s <= cfg.epochs; ++s) {
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t i = idx_rng.uniform_index(p.n());
      GradientEstimate est = saga_estimate(p, table, i, x);
      ++c.component_grads;
      saga_update_table(table, p, i, x);
      if (p.reg.smooth_handled()) p.reg.add_gradient(x, est.estimate);
      DenseVector x_new = apply_step(p, x, eta, est.estimate);
      if (with_momentum && sigma != 1.0) {
        const double cmom = 1.0 - sigma;
        for (std::size_t j = 0; j < p.d(); ++j) x_new[j] += cmom * (x_new[j] - x[j]);
      }
      x = std::move(x_new);
      tb.maybe_log_iterate(x);
    }
    tb.record(s, c, x);
  }
  return {std::move(x), tb.take()};
}

}  // namespace

SolveResult run_solver(const ProblemInstance& p, const SolverConfig& cfg) {
  return run_solver(p, cfg, DenseVector(p.d(), 0.0));
}

SolveResult run_solver(const ProblemInstance& p, const SolverConfig& cfg,
                       const DenseVector& x0) {
  if (x0.size() != p.d()) throw std::invalid_argument("starting point dimension mismatch");
  switch (cfg.algorithm) {
    case Algorithm::SvrgSd:
      return solve_svrg_sd(p, cfg, x0);
    case Algorithm::SagaSd:
      return solve_saga_sd(p, cfg, x0);
    case Algorithm::SvrgI:
    case Algorithm::SvrgII:
    case Algorithm::ProxSvrg:
    case Algorithm::SvrgSdi:
      return solve_svrg_family(p, cfg, x0);
    case Algorithm::Saga:
    case Algorithm::SagaSdi:
      return solve_saga_family(p, cfg, x0);
  }
  throw std::logic_error("unreachable");
}

}  // namespace vrsd
