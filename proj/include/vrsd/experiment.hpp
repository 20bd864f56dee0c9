#pragma once

#include <optional>
#include <string>
#include <variant>

#include "vrsd/io.hpp"
#include "vrsd/solvers.hpp"
#include "vrsd/synthetic.hpp"

namespace vrsd {

struct SyntheticSpec {
  std::size_t n = 1000;
  std::size_t d = 20;
  double noise_sd = 0.1;
  double sparsity = 1.0;
};

struct DatasetSpec {
  std::variant<std::string, SyntheticSpec> source;  // path or synthetic spec
  std::size_t n_cols_override = 0;
  std::string name() const;
};

struct LossSpec {
  RegKind kind = RegKind::SquaredL2;
  double lambda1 = 1e-4;
  double lambda2 = 0.0;
  bool smooth_l2 = false;  // handle squared-L2 by gradient instead of prox
};

struct ExperimentConfig {
  DatasetSpec dataset;
  LossSpec loss;
  std::vector<SolverConfig> algorithms;
  bool normalize = true;
  std::size_t svd_rank = 0;  // 0 = exact ||Ax||^2 everywhere
  std::uint64_t seed = 0;
  std::optional<std::string> ref_opt_path;  // precomputed F(x*) for the gap column
  std::string output_path;                   // trace CSV
};

struct TraceFileRecord {
  std::string algorithm;
  std::size_t epoch = 0;
  double effective_passes = 0.0;
  double wall_time_s = 0.0;
  double objective = 0.0;
  std::optional<double> gap;
};

struct TraceFile {
  std::vector<std::pair<std::string, std::string>> metadata;  // emitted as # key value
  std::vector<TraceFileRecord> records;
};

ProblemInstance build_problem(const ExperimentConfig& cfg);

/// Runs every configured solver (in parallel up to VRSD_THREADS) and writes
/// the trace CSV to cfg.output_path when nonempty.
TraceFile run_experiment(const ExperimentConfig& cfg);

void write_trace_file(const std::string& path, const TraceFile& tf);
std::string trace_file_to_string(const TraceFile& tf);
TraceFile read_trace_file(const std::string& path);

/// SVG convergence plot (log-scale gap by default) plus a plot-ready tabular
/// sidecar next to it (`<path>.dat`).
enum class PlotAxis { Passes, Time };
void emit_plot(const TraceFile& tf, const std::string& svg_path, PlotAxis axis);

}  // namespace vrsd
