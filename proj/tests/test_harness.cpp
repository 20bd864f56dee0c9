#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "vrsd/experiment.hpp"
#include "vrsd/reference.hpp"

using namespace vrsd;
using vrsd_test::random_dense_rows;
using vrsd_test::random_vector;

namespace {

std::filesystem::path temp_path(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("libsvm line parsing") {
  std::istringstream in("1 1:0.5 3:-2\n");
  const LibsvmData data = parse_libsvm(in);
  CHECK(data.b == DenseVector{1.0});
  CHECK(data.A.n_cols == 3);
  CHECK(data.A.to_dense()[0] == DenseVector{0.5, 0.0, -2.0});

  std::istringstream feat_free("0.5\n");
  const LibsvmData d2 = parse_libsvm(feat_free);
  CHECK(d2.b == DenseVector{0.5});
  CHECK(d2.A.row_nnz(0) == 0);

  std::istringstream with_noise("# comment\n\n  \t\n-1 2:3.5 # trailing\n");
  const LibsvmData d3 = parse_libsvm(with_noise);
  CHECK(d3.b == DenseVector{-1.0});
  CHECK(d3.A.to_dense()[0] == DenseVector{0.0, 3.5});
}

TEST_CASE("libsvm parse errors carry line numbers") {
  std::istringstream bad_label("# ok\nfoo 1:2\n");
  CHECK_THROWS_WITH_AS(parse_libsvm(bad_label), doctest::Contains("line 2"), ParseError);

  std::istringstream non_increasing("1 2:1 2:2\n");
  CHECK_THROWS_AS(parse_libsvm(non_increasing), ParseError);

  std::istringstream bad_token("1 3-4\n");
  CHECK_THROWS_AS(parse_libsvm(bad_token), ParseError);

  std::istringstream empty("\n# nothing\n");
  CHECK_THROWS_AS(parse_libsvm(empty), ParseError);

  std::istringstream small_override("1 1:1 5:2\n");
  CHECK_THROWS_AS(parse_libsvm(small_override, 3), ParseError);

  std::istringstream ok_override("1 1:1\n");
  CHECK(parse_libsvm(ok_override, 7).A.n_cols == 7);
}

TEST_CASE("libsvm round trip is exact") {
  Rng rng(201);
  const auto rows = random_dense_rows(rng, 12, 6, 0.4);
  const SparseMatrix A = SparseMatrix::from_dense(rows, 6);
  const DenseVector b = random_vector(rng, 12);
  const auto path = temp_path("vrsd_roundtrip.libsvm");
  save_libsvm(path.string(), A, b);
  const LibsvmData back = load_libsvm(path.string(), 6);
  CHECK(back.b == b);
  CHECK(back.A.row_ptr == A.row_ptr);
  CHECK(back.A.col_idx == A.col_idx);
  CHECK(back.A.values == A.values);
  std::filesystem::remove(path);
}

TEST_CASE("normalize_rows") {
  const SparseMatrix A = SparseMatrix::from_dense({{3, 4}, {0, 0}, {0, 5}}, 2);
  const SparseMatrix N = normalize_rows(A);
  CHECK(N.to_dense()[0] == DenseVector{0.6, 0.8});
  CHECK(N.row_nnz(1) == 0);
  for (std::size_t i = 0; i < N.n_rows; ++i)
    if (N.row_nnz(i) > 0) CHECK(row_norm_sq(N, i) == doctest::Approx(1.0).epsilon(1e-10));

  // idempotence
  const SparseMatrix NN = normalize_rows(N);
  CHECK(max_abs_diff(NN.values, N.values) <= 1e-12);
}

TEST_CASE("synthetic generation is deterministic and well formed") {
  const SyntheticProblem a = make_synthetic(50, 8, 0.1, 0.5, 77);
  const SyntheticProblem b = make_synthetic(50, 8, 0.1, 0.5, 77);
  CHECK(a.b == b.b);
  CHECK(a.A.values == b.A.values);
  CHECK(a.x_true == b.x_true);
  CHECK(make_synthetic(50, 8, 0.1, 0.5, 78).b != a.b);

  for (std::size_t i = 0; i < a.A.n_rows; ++i) {
    CHECK(a.A.row_nnz(i) >= 1);
    CHECK(row_norm_sq(a.A, i) == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK_THROWS_AS(make_synthetic(0, 3, 0.1, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_synthetic(3, 3, 0.1, 0.0, 1), std::invalid_argument);

  // noiseless construction: x_true attains F ~ 0 for unregularized least squares
  const SyntheticProblem c = make_synthetic(40, 5, 0.0, 1.0, 9);
  const auto p = ProblemInstance::create(c.A, c.b, Regularizer::none());
  CHECK(evaluate_objective(p, c.x_true) <= 1e-12);
}

TEST_CASE("reference optimum on a closed-form quadratic") {
  // single sample a = 1, b = 2, no regularizer: minimum 0 at x = 2
  const auto p = ProblemInstance::create(SparseMatrix::from_dense({{1.0}}, 1), {2.0},
                                         Regularizer::none());
  const ReferenceOptimum ref = compute_reference_optimum(p, 300);
  CHECK(ref.converged);
  CHECK(std::abs(ref.x_star[0] - 2.0) <= 1e-10);
  CHECK(ref.f_star <= 1e-12);

  const SyntheticProblem sp = make_synthetic(60, 6, 0.0, 1.0, 13);
  const auto q = ProblemInstance::create(sp.A, sp.b, Regularizer::none());
  CHECK(compute_reference_optimum(q, 400).f_star <= 1e-12);
}

TEST_CASE("reference optimum is seed stable") {
  const SyntheticProblem sp = make_synthetic(80, 6, 0.1, 1.0, 21);
  const auto p = ProblemInstance::create(sp.A, sp.b, Regularizer::squared_l2(1e-3));
  const double f1 = compute_reference_optimum(p, 400, 1).f_star;
  const double f2 = compute_reference_optimum(p, 400, 2).f_star;
  CHECK(f1 == doctest::Approx(f2).epsilon(1e-10));
}

TEST_CASE("reference file round trip") {
  ReferenceOptimum ref;
  ref.x_star = {1.5, -0.25, 0.0};
  ref.f_star = 0.0625;
  ref.converged = false;
  const auto path = temp_path("vrsd_ref.txt");
  save_reference(path.string(), ref);
  const ReferenceOptimum back = load_reference(path.string());
  CHECK(back.x_star == ref.x_star);
  CHECK(back.f_star == ref.f_star);
  CHECK(back.converged == ref.converged);
  std::filesystem::remove(path);
}

TEST_CASE("trace file serialization round trip") {
  TraceFile tf;
  tf.metadata = {{"dataset", "unit-test"}, {"seed", "7"}};
  tf.records.push_back({"svrg-sd", 0, 0.0, 1e-6, 0.5, 0.25});
  tf.records.push_back({"svrg-sd", 1, 3.0, 2e-3, 0.125, std::nullopt});
  const std::string text = trace_file_to_string(tf);
  CHECK(text.find("# dataset unit-test\n") != std::string::npos);
  CHECK(text.find("algorithm,epoch,effective_passes,wall_time_s,objective,gap\n") !=
        std::string::npos);
  CHECK(text.find("svrg-sd,1,3,0.002,0.125,\n") != std::string::npos);
  CHECK(text.find("\r") == std::string::npos);

  const auto path = temp_path("vrsd_trace.csv");
  write_trace_file(path.string(), tf);
  const TraceFile back = read_trace_file(path.string());
  REQUIRE(back.records.size() == 2);
  CHECK(back.metadata == tf.metadata);
  CHECK(back.records[0].gap == 0.25);
  CHECK(!back.records[1].gap.has_value());
  CHECK(back.records[1].objective == 0.125);
  std::filesystem::remove(path);
}

TEST_CASE("run_experiment produces blocked records per algorithm") {
  ExperimentConfig cfg;
  cfg.dataset.source = SyntheticSpec{80, 6, 0.1, 1.0};
  cfg.loss.kind = RegKind::SquaredL2;
  cfg.loss.lambda1 = 1e-2;
  cfg.seed = 5;
  SolverConfig a;
  a.algorithm = Algorithm::SvrgSd;
  a.epochs = 3;
  SolverConfig b = a;
  b.algorithm = Algorithm::Saga;
  cfg.algorithms = {a, b};

  const TraceFile tf = run_experiment(cfg);
  REQUIRE(tf.records.size() == 8);  // 4 records each, blocked
  for (int k = 0; k < 4; ++k) CHECK(tf.records[k].algorithm == "svrg-sd");
  for (int k = 4; k < 8; ++k) CHECK(tf.records[k].algorithm == "saga");
  CHECK(!tf.records[0].gap.has_value());

  // rerun: identical except wall time
  const TraceFile tf2 = run_experiment(cfg);
  for (std::size_t k = 0; k < tf.records.size(); ++k) {
    CHECK(tf.records[k].objective == tf2.records[k].objective);
    CHECK(tf.records[k].effective_passes == tf2.records[k].effective_passes);
  }

  CHECK_THROWS_AS(run_experiment(ExperimentConfig{cfg.dataset, cfg.loss, {}}),
                  std::invalid_argument);
}

TEST_CASE("run_experiment fills the gap column from a reference file") {
  ExperimentConfig cfg;
  cfg.dataset.source = SyntheticSpec{60, 5, 0.1, 1.0};
  cfg.loss.kind = RegKind::SquaredL2;
  cfg.loss.lambda1 = 1e-2;
  cfg.seed = 3;
  const ProblemInstance p = build_problem(cfg);
  const ReferenceOptimum ref = compute_reference_optimum(p, 400);
  REQUIRE(ref.converged);
  const auto ref_path = temp_path("vrsd_exp_ref.txt");
  save_reference(ref_path.string(), ref);

  SolverConfig sc;
  sc.algorithm = Algorithm::SvrgSd;
  sc.epochs = 20;
  cfg.algorithms = {sc};
  cfg.ref_opt_path = ref_path.string();
  const TraceFile tf = run_experiment(cfg);
  for (const auto& r : tf.records) {
    REQUIRE(r.gap.has_value());
    CHECK(*r.gap >= -1e-12);
  }
  CHECK(*tf.records.back().gap < *tf.records.front().gap);
  std::filesystem::remove(ref_path);
}

TEST_CASE("emit_plot writes an svg and a sidecar, with clipping annotation") {
  TraceFile tf;
  tf.records.push_back({"svrg-sd", 0, 0.0, 0.0, 1.0, 0.5});
  tf.records.push_back({"svrg-sd", 1, 3.0, 0.1, 0.5, -1e-18});  // nonpositive gap
  tf.records.push_back({"saga", 0, 0.0, 0.0, 1.0, 0.25});
  const auto path = temp_path("vrsd_plot.svg");
  emit_plot(tf, path.string(), PlotAxis::Passes);

  std::ifstream svg(path);
  std::stringstream ss;
  ss << svg.rdbuf();
  const std::string doc = ss.str();
  CHECK(doc.find("<svg") != std::string::npos);
  CHECK(doc.find("clipped at 1e-16") != std::string::npos);
  CHECK(doc.find("svrg-sd") != std::string::npos);
  CHECK(doc.find("<circle") != std::string::npos);  // single-point saga curve

  std::ifstream dat(path.string() + ".dat");
  REQUIRE(dat.good());
  std::string first;
  std::getline(dat, first);
  CHECK(first == "# algorithm x gap_clipped");

  std::filesystem::remove(path);
  std::filesystem::remove(path.string() + ".dat");
}

TEST_CASE("emit_plot requires the gap column") {
  TraceFile tf;
  tf.records.push_back({"svrg-sd", 0, 0.0, 0.0, 1.0, std::nullopt});
  CHECK_THROWS_AS(emit_plot(tf, temp_path("never.svg").string(), PlotAxis::Time),
                  std::invalid_argument);
  TraceFile empty;
  CHECK_THROWS_AS(emit_plot(empty, temp_path("never.svg").string(), PlotAxis::Passes),
                  std::invalid_argument);
}

TEST_CASE("parser survives byte-mutation fuzzing") {
  Rng rng(301);
  const std::string base = "1 1:0.5 3:-2.25\n-1 2:7\n0.5\n";
  int parsed = 0, rejected = 0;
  for (int t = 0; t < 1000; ++t) {
    std::string mutated = base;
    const int flips = 1 + static_cast<int>(rng.uniform_index(4));
    for (int f = 0; f < flips; ++f)
      mutated[rng.uniform_index(mutated.size())] =
          static_cast<char>(rng.uniform_index(96) + 32);
    std::istringstream in(mutated);
    try {
      const LibsvmData data = parse_libsvm(in);
      data.A.validate();
      CHECK(data.b.size() == data.A.n_rows);
      ++parsed;
    } catch (const ParseError&) {
      ++rejected;
    }
  }
  CHECK(parsed + rejected == 1000);
  CHECK(parsed > 0);
  CHECK(rejected > 0);
}
