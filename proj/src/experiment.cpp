#include "vrsd/experiment.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <sstream>

#include "vrsd/format.hpp"
#include "vrsd/reference.hpp"

namespace vrsd {

namespace {

std::size_t thread_cap() {
  if (const char* env = std::getenv("VRSD_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  return 1;
}

std::string loss_name(const LossSpec& loss) {
  switch (loss.kind) {
    case RegKind::None: return "none";
    case RegKind::L1: return "lasso";
    case RegKind::SquaredL2: return "ridge";
    case RegKind::ElasticNet: return "elastic-net";
  }
  return "?";
}

}  // namespace

std::string DatasetSpec::name() const {
  if (const auto* path = std::get_if<std::string>(&source)) return *path;
  const auto& s = std::get<SyntheticSpec>(source);
  std::ostringstream os;
  os << "synthetic(n=" << s.n << ",d=" << s.d << ",noise=" << s.noise_sd
     << ",sparsity=" << s.sparsity << ")";
  return os.str();
}

ProblemInstance build_problem(const ExperimentConfig& cfg) {
  SparseMatrix A;
  DenseVector b;
  if (const auto* path = std::get_if<std::string>(&cfg.dataset.source)) {
    LibsvmData data = load_libsvm(*path, cfg.dataset.n_cols_override);
    A = std::move(data.A);
    b = std::move(data.b);
  } else {
    const auto& s = std::get<SyntheticSpec>(cfg.dataset.source);
    SyntheticProblem sp = make_synthetic(s.n, s.d, s.noise_sd, s.sparsity, cfg.seed);
    A = std::move(sp.A);
    b = std::move(sp.b);
  }
  if (cfg.normalize) A = normalize_rows(A);

  Regularizer reg;
  switch (cfg.loss.kind) {
    case RegKind::None:
      reg = Regularizer::none();
      break;
    case RegKind::L1:
      reg = Regularizer::l1(cfg.loss.lambda1);
      break;
    case RegKind::SquaredL2:
      reg = Regularizer::squared_l2(cfg.loss.lambda1, cfg.loss.smooth_l2
                                                          ? RegHandling::SmoothGradient
                                                          : RegHandling::Proximal);
      break;
    case RegKind::ElasticNet:
      reg = Regularizer::elastic_net(cfg.loss.lambda1, cfg.loss.lambda2);
      break;
  }
  return ProblemInstance::create(std::move(A), std::move(b), reg, cfg.svd_rank);
}

TraceFile run_experiment(const ExperimentConfig& cfg) {
  if (cfg.algorithms.empty())
    throw std::invalid_argument("experiment needs at least one algorithm");
  const ProblemInstance p = build_problem(cfg);

  std::optional<double> f_star;
  if (cfg.ref_opt_path) f_star = load_reference(*cfg.ref_opt_path).f_star;

  std::vector<SolverConfig> runs = cfg.algorithms;
  for (std::size_t i = 0; i < runs.size(); ++i)
    if (runs[i].seed == 0) runs[i].seed = split_seed(cfg.seed, 100 + i);

  std::vector<Trace> traces(runs.size());
  const std::size_t workers = std::min(thread_cap(), runs.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < runs.size(); ++i) traces[i] = run_solver(p, runs[i]).trace;
  } else {
    std::vector<std::future<Trace>> futs;
    futs.reserve(runs.size());
    for (const auto& rc : runs)
      futs.push_back(std::async(std::launch::async,
                                [&p, rc] { return run_solver(p, rc).trace; }));
    for (std::size_t i = 0; i < futs.size(); ++i) traces[i] = futs[i].get();
  }

  TraceFile tf;
  tf.metadata = {
      {"dataset", cfg.dataset.name()},
      {"n", std::to_string(p.n())},
      {"d", std::to_string(p.d())},
      {"loss", loss_name(cfg.loss)},
      {"lambda1", format_double(cfg.loss.lambda1)},
      {"lambda2", format_double(cfg.loss.lambda2)},
      {"normalize", cfg.normalize ? "true" : "false"},
      {"seed", std::to_string(cfg.seed)},
      {"rng", kRngId},
  };
  if (f_star) tf.metadata.emplace_back("f_star", format_double(*f_star));
  for (std::size_t i = 0; i < runs.size(); ++i) {
    std::ostringstream os;
    os << algorithm_name(runs[i].algorithm) << " eta=" << format_double(runs[i].eta)
       << " alpha=" << format_double(runs[i].alpha) << " sigma=" << format_double(runs[i].sigma)
       << " m=" << runs[i].m << " epochs=" << runs[i].epochs
       << " mode=" << (runs[i].mode == Mode::SC ? "sc" : "nsc") << " seed=" << runs[i].seed;
    tf.metadata.emplace_back("config", os.str());
  }
  for (const auto& trace : traces) {
    for (const auto& rec : trace.records) {
      TraceFileRecord r;
      r.algorithm = trace.algorithm;
      r.epoch = rec.epoch;
      r.effective_passes = rec.effective_passes;
      r.wall_time_s = rec.wall_time_s;
      r.objective = rec.objective;
      if (f_star) r.gap = rec.objective - *f_star;
      tf.records.push_back(std::move(r));
    }
  }
  if (!cfg.output_path.empty()) write_trace_file(cfg.output_path, tf);
  return tf;
}

std::string trace_file_to_string(const TraceFile& tf) {
  std::ostringstream out;
  for (const auto& [key, value] : tf.metadata) out << "# " << key << ' ' << value << '\n';
  out << "algorithm,epoch,effective_passes,wall_time_s,objective,gap\n";
  for (const auto& r : tf.records) {
    out << r.algorithm << ',' << r.epoch << ',' << format_double(r.effective_passes) << ','
        << format_double(r.wall_time_s) << ',' << format_double(r.objective) << ','
        << (r.gap ? format_double(*r.gap) : std::string()) << '\n';
  }
  return out.str();
}

void write_trace_file(const std::string& path, const TraceFile& tf) {
  std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
  if (!out) throw std::runtime_error("cannot open trace file for writing: " + path);
  out << trace_file_to_string(tf);
}

TraceFile read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trace file: " + path);
  TraceFile tf;
  std::string line;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream fields(line.substr(1));
      std::string key;
      fields >> key;
      std::string value;
      std::getline(fields, value);
      if (!value.empty() && value[0] == ' ') value.erase(0, 1);
      tf.metadata.emplace_back(key, value);
      continue;
    }
    if (!header_seen) {
      header_seen = true;  // column order is fixed
      continue;
    }
    TraceFileRecord r;
    std::istringstream fields(line);
    std::string tok;
    auto next = [&](const char* what) {
      if (!std::getline(fields, tok, ','))
        throw ParseError(std::string("missing field: ") + what, line_no);
      return tok;
    };
    r.algorithm = next("algorithm");
    r.epoch = std::stoul(next("epoch"));
    r.effective_passes = std::stod(next("effective_passes"));
    r.wall_time_s = std::stod(next("wall_time_s"));
    r.objective = std::stod(next("objective"));
    if (std::getline(fields, tok, ',') && !tok.empty()) r.gap = std::stod(tok);
    tf.records.push_back(std::move(r));
  }
  if (!header_seen) throw std::runtime_error("trace file has no header: " + path);
  return tf;
}

}  // namespace vrsd
