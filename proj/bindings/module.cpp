#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vrsd/experiment.hpp"
#include "vrsd/reference.hpp"
#include "vrsd/sufficient_decrease.hpp"

namespace py = pybind11;

namespace {

vrsd::Regularizer make_reg(const std::string& loss, double lambda1, double lambda2) {
  if (loss == "none") return vrsd::Regularizer::none();
  if (loss == "ridge") return vrsd::Regularizer::squared_l2(lambda1);
  if (loss == "lasso") return vrsd::Regularizer::l1(lambda1);
  if (loss == "elastic-net") return vrsd::Regularizer::elastic_net(lambda1, lambda2);
  throw std::invalid_argument("loss must be none|ridge|lasso|elastic-net");
}

vrsd::ProblemInstance make_problem(const std::vector<vrsd::DenseVector>& rows,
                                   vrsd::DenseVector b, const std::string& loss,
                                   double lambda1, double lambda2, std::size_t svd_rank) {
  if (rows.empty()) throw std::invalid_argument("empty data matrix");
  const std::size_t d = rows[0].size();
  return vrsd::ProblemInstance::create(vrsd::SparseMatrix::from_dense(rows, d), std::move(b),
                                       make_reg(loss, lambda1, lambda2), svd_rank);
}

py::dict trace_to_dict(const vrsd::Trace& t) {
  py::list epochs, passes, times, objectives;
  for (const auto& r : t.records) {
    epochs.append(r.epoch);
    passes.append(r.effective_passes);
    times.append(r.wall_time_s);
    objectives.append(r.objective);
  }
  py::dict d;
  d["algorithm"] = t.algorithm;
  d["seed"] = t.seed;
  d["epoch"] = epochs;
  d["effective_passes"] = passes;
  d["wall_time_s"] = times;
  d["objective"] = objectives;
  return d;
}

py::dict solve(const vrsd::ProblemInstance& p, const std::string& algorithm, double eta,
               double alpha, double sigma, std::size_t m, std::size_t epochs,
               const std::string& mode, std::size_t m1, bool default_m1, double delta,
               std::uint64_t seed) {
  vrsd::SolverConfig cfg;
  cfg.algorithm = vrsd::algorithm_from_name(algorithm);
  cfg.eta = eta;
  cfg.alpha = alpha;
  cfg.sigma = sigma;
  cfg.m = m;
  cfg.epochs = epochs;
  cfg.mode = mode == "nsc" ? vrsd::Mode::NSC : vrsd::Mode::SC;
  cfg.sd.m1 = m1;
  cfg.sd_default_m1 = default_m1;
  cfg.sd.delta = delta;
  cfg.seed = seed;
  const vrsd::SolveResult res = vrsd::run_solver(p, cfg);
  py::dict out = trace_to_dict(res.trace);
  out["solution"] = res.solution;
  return out;
}

}  // namespace

PYBIND11_MODULE(_vrsd, mod) {
  mod.doc() = "Variance-reduced SGD with sufficient decrease";

  py::class_<vrsd::ProblemInstance>(mod, "Problem")
      .def_property_readonly("n", &vrsd::ProblemInstance::n)
      .def_property_readonly("d", &vrsd::ProblemInstance::d)
      .def_readonly("lipschitz", &vrsd::ProblemInstance::lipschitz);

  mod.def("make_problem", &make_problem, py::arg("rows"), py::arg("b"),
          py::arg("loss") = "ridge", py::arg("lambda1") = 1e-4, py::arg("lambda2") = 0.0,
          py::arg("svd_rank") = 0,
          "Build a squared-loss problem from dense rows and targets.");

  mod.def(
      "make_synthetic",
      [](std::size_t n, std::size_t d, double noise_sd, double sparsity, std::uint64_t seed) {
        vrsd::SyntheticProblem sp = vrsd::make_synthetic(n, d, noise_sd, sparsity, seed);
        return py::make_tuple(sp.A.to_dense(), sp.b, sp.x_true);
      },
      py::arg("n"), py::arg("d"), py::arg("noise_sd") = 0.1, py::arg("sparsity") = 1.0,
      py::arg("seed") = 0, "Deterministic synthetic regression data (rows, b, x_true).");

  mod.def("objective", &vrsd::evaluate_objective, py::arg("problem"), py::arg("x"));
  mod.def("full_gradient", &vrsd::full_gradient, py::arg("problem"), py::arg("x"));

  mod.def("solve", &solve, py::arg("problem"), py::arg("algorithm") = "svrg-sd",
          py::arg("eta") = 0.0, py::arg("alpha") = 19.0, py::arg("sigma") = 0.5,
          py::arg("m") = 0, py::arg("epochs") = 10, py::arg("mode") = "sc", py::arg("m1") = 0,
          py::arg("default_m1") = true, py::arg("delta") = 0.1, py::arg("seed") = 0,
          "Run one solver; returns the trace columns plus the final iterate.");

  mod.def(
      "solve_theta",
      [](const vrsd::ProblemInstance& p, const vrsd::DenseVector& x, double rns, double zeta) {
        const vrsd::ThetaSolution s = vrsd::solve_theta(p, x, rns, zeta);
        py::dict d;
        d["theta"] = s.theta;
        d["objective_at_theta"] = s.objective_at_theta;
        d["sd_bound"] = s.sd_bound;
        d["degenerate"] = s.degenerate;
        return d;
      },
      py::arg("problem"), py::arg("x"), py::arg("residual_norm_sq"), py::arg("zeta"),
      "Closed-form sufficient-decrease scaling for the problem's regularizer.");

  mod.def(
      "reference_optimum",
      [](const vrsd::ProblemInstance& p, std::size_t budget_epochs, std::uint64_t seed) {
        const vrsd::ReferenceOptimum ref = vrsd::compute_reference_optimum(p, budget_epochs, seed);
        py::dict d;
        d["x_star"] = ref.x_star;
        d["f_star"] = ref.f_star;
        d["converged"] = ref.converged;
        return d;
      },
      py::arg("problem"), py::arg("budget_epochs") = 500, py::arg("seed") = 12345);

  mod.attr("rng_id") = vrsd::kRngId;
  mod.attr("algorithms") =
      py::make_tuple("svrg-sd", "saga-sd", "svrg-i", "svrg-ii", "prox-svrg", "svrg-sdi",
                     "saga-sdi", "saga");
}
