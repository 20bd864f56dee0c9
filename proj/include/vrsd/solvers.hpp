#pragma once

#include <cstdint>
#include <string>

#include "vrsd/estimators.hpp"
#include "vrsd/sufficient_decrease.hpp"

namespace vrsd {

enum class Algorithm {
  SvrgSd,
  SagaSd,
  SvrgI,
  SvrgII,
  ProxSvrg,
  SvrgSdi,
  SagaSdi,
  Saga,
};

enum class Mode { SC, NSC };

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

struct SolverConfig {
  Algorithm algorithm = Algorithm::SvrgSd;
  double eta = 0.0;    // 0 -> 1/(L*alpha)
  double alpha = 19.0;
  double sigma = 0.5;
  bool sigma_from_formula = true;  // SDI variants only
  bool sigma_log10 = false;        // base-10 log in the SDI sigma formulas
  std::size_t m = 0;   // 0 -> 2n (n for SAGA-SD / SAGA / SAGA-SDI)
  std::size_t epochs = 10;
  Mode mode = Mode::SC;
  SdConfig sd;
  bool sd_default_m1 = true;  // m1 = floor(m/1000) unless overridden
  std::uint64_t seed = 0;
  double divergence_factor = 1e3;

  // Test hooks.
  bool record_iterates = false;      // store x after every inner iteration
  bool record_theta_checks = false;  // store every SD ThetaSolution
};

struct TraceRecord {
  std::size_t epoch = 0;
  double effective_passes = 0.0;
  double wall_time_s = 0.0;
  double objective = 0.0;
};

struct Trace {
  std::vector<TraceRecord> records;
  std::string algorithm;
  std::string rng_id;
  std::uint64_t seed = 0;
  std::vector<DenseVector> iterates;       // when record_iterates
  std::vector<ThetaSolution> theta_log;    // when record_theta_checks
};

struct SolveResult {
  DenseVector solution;
  Trace trace;
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(std::string msg, Trace trace)
      : std::runtime_error(std::move(msg)), trace(std::move(trace)) {}
  Trace trace;
};

/// Eq.-style momentum combine: y + (1 - sigma) * (x_hat - x_hat_prev).
DenseVector momentum_combine(const DenseVector& y, const DenseVector& x_hat,
                             const DenseVector& x_hat_prev, double sigma);

/// component_grads/n + full_grads.
double effective_passes(std::size_t component_grads, std::size_t full_grads, std::size_t n);

/// sigma formulas for the momentum-only variants.
double sdi_sigma_svrg(double lambda, Mode mode, std::size_t epochs, bool log10_base);
double sdi_sigma_saga(double lambda, bool log10_base);

SolveResult run_svrg_sd(const ProblemInstance& p, const SolverConfig& cfg);
SolveResult run_saga_sd(const ProblemInstance& p, const SolverConfig& cfg);
SolveResult run_svrg_baseline(const ProblemInstance& p, const SolverConfig& cfg);
SolveResult run_svrg_sdi(const ProblemInstance& p, const SolverConfig& cfg);
SolveResult run_saga_sdi(const ProblemInstance& p, const SolverConfig& cfg);
SolveResult run_saga(const ProblemInstance& p, const SolverConfig& cfg);

/// Dispatch on cfg.algorithm, starting from x0 = 0.
SolveResult run_solver(const ProblemInstance& p, const SolverConfig& cfg);
SolveResult run_solver(const ProblemInstance& p, const SolverConfig& cfg,
                       const DenseVector& x0);

}  // namespace vrsd
