// Python bindings for the qutrit turnover toolkit. Enums cross the
// boundary as short strings ("x", "standard", "T3", ...) so the Python
// surface stays free of wrapper-only types.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>
#include <tuple>

#include <nlohmann/json.hpp>

#include "qturn/circuit.hpp"
#include "qturn/dynamics.hpp"
#include "qturn/gates.hpp"
#include "qturn/optimizer.hpp"
#include "qturn/spin.hpp"
#include "qturn/trotter.hpp"
#include "qturn/turnover.hpp"

namespace py = pybind11;
using namespace qturn;

namespace {

Axis axis_from_string(const std::string& s) {
  if (s == "x") return Axis::X;
  if (s == "y") return Axis::Y;
  if (s == "z") return Axis::Z;
  throw std::invalid_argument("axis must be 'x', 'y' or 'z', got '" + s + "'");
}

Rep rep_from_string(const std::string& s) {
  if (s == "standard") return Rep::Standard;
  if (s == "adjoint") return Rep::Adjoint;
  throw std::invalid_argument("rep must be 'standard' or 'adjoint', got '" +
                              s + "'");
}

AxisWeights weights_from_tuple(const std::tuple<int, int, int>& t) {
  return AxisWeights{std::get<0>(t), std::get<1>(t), std::get<2>(t)};
}

std::tuple<int, int, int> weights_to_tuple(const AxisWeights& w) {
  return {w.sx, w.sy, w.sz};
}

OptimizerConfig make_config(int max_iterations, double gradient_step,
                            double convergence_tol, int restarts,
                            double perturbation_scale, std::uint64_t seed) {
  OptimizerConfig cfg;
  cfg.max_iterations = max_iterations;
  cfg.gradient_step = gradient_step;
  cfg.convergence_tol = convergence_tol;
  cfg.restarts = restarts;
  cfg.perturbation_scale = perturbation_scale;
  cfg.rng_seed = seed;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Two-qutrit turnover identities, mirror-angle optimization, Trotter "
      "circuit compression and return-probability dynamics for the spin-1 "
      "XY chain.";

  // ---- circuit types -------------------------------------------------
  py::class_<GateInstance>(m, "Gate")
      .def(py::init([](const std::string& gen, int site, double angle,
                       const std::tuple<int, int, int>& weights) {
             GateInstance g;
             g.gen = gen_from_name(gen);
             g.site = site;
             g.angle = angle;
             g.weights = weights_from_tuple(weights);
             return g;
           }),
           py::arg("gen"), py::arg("site"), py::arg("angle"),
           py::arg("weights") = std::tuple<int, int, int>{0, 0, 0})
      .def_property(
          "gen", [](const GateInstance& g) { return gen_name(g.gen); },
          [](GateInstance& g, const std::string& s) { g.gen = gen_from_name(s); })
      .def_readwrite("site", &GateInstance::site)
      .def_readwrite("angle", &GateInstance::angle)
      .def_property(
          "weights",
          [](const GateInstance& g) { return weights_to_tuple(g.weights); },
          [](GateInstance& g, const std::tuple<int, int, int>& t) {
            g.weights = weights_from_tuple(t);
          })
      .def("__repr__", [](const GateInstance& g) {
        return "Gate(gen='" + gen_name(g.gen) +
               "', site=" + std::to_string(g.site) +
               ", angle=" + std::to_string(g.angle) + ")";
      });

  py::class_<Circuit>(m, "Circuit")
      .def(py::init([](int n, const std::vector<GateInstance>& gates) {
             Circuit c;
             c.n = n;
             c.gates = gates;
             return c;
           }),
           py::arg("n"), py::arg("gates") = std::vector<GateInstance>{})
      .def_readwrite("n", &Circuit::n)
      .def_readwrite("gates", &Circuit::gates)
      .def("__len__", [](const Circuit& c) { return c.gates.size(); })
      .def("__repr__", [](const Circuit& c) {
        return "Circuit(n=" + std::to_string(c.n) + ", gates=" +
               std::to_string(c.gates.size()) + ")";
      });

  m.def("circuit_unitary", &circuit_unitary, py::arg("circuit"),
        "Full 3^n x 3^n unitary; gates apply in list order.");
  m.def("apply_circuit", &apply_circuit, py::arg("state"), py::arg("circuit"),
        "Stream the circuit through a state vector.");
  m.def("merge_pass", &merge_pass, py::arg("circuit"),
        "Fuse same-generator neighbors on the same site pair.");
  m.def(
      "circuit_to_json",
      [](const Circuit& c) { return circuit_to_json(c).dump(2); },
      py::arg("circuit"));
  m.def(
      "circuit_from_json",
      [](const std::string& text) {
        return circuit_from_json(nlohmann::json::parse(text));
      },
      py::arg("text"));

  // ---- spin algebra ---------------------------------------------------
  m.def(
      "spin_operator",
      [](const std::string& axis, const std::string& rep) {
        return spin_operator(axis_from_string(axis), rep_from_string(rep));
      },
      py::arg("axis"), py::arg("rep") = "standard",
      "3x3 spin-1 operator for one axis.");
  m.def(
      "weighted_generator",
      [](const std::tuple<int, int, int>& w, const std::string& rep) {
        return weighted_generator(weights_from_tuple(w), rep_from_string(rep));
      },
      py::arg("weights"), py::arg("rep") = "standard",
      "sum_a s_a S^a with integer weights in {-1, 0, +1}.");
  m.def("m_matrix", &m_matrix, py::arg("s1"), py::arg("s2"),
        "Two-sign conjugation unitary M_{s1 s2}.");
  m.def(
      "algebra_report",
      [](const std::string& rep) { return algebra_report(rep_from_string(rep)); },
      py::arg("rep") = "standard",
      "Max residual over the core operator identities.");

  // ---- gates ----------------------------------------------------------
  m.def(
      "gate_matrix",
      [](const std::tuple<int, int, int>& w, double angle) {
        return gate_matrix(weights_from_tuple(w), angle);
      },
      py::arg("weights"), py::arg("angle"),
      "exp(-i angle (G x G)) for the adjoint weighted generator G.");
  m.def("xy_pair_gate", &xy_pair_gate, py::arg("angle"),
        "exp(-i angle (Sx~Sx~ + Sy~Sy~)) on one pair.");
  m.def("embed", &embed, py::arg("gate"), py::arg("left_site"),
        py::arg("n_sites"),
        "Embed a 9x9 pair gate into an n-site register.");

  // ---- turnover -------------------------------------------------------
  m.def(
      "turnover_residual",
      [](const std::tuple<int, int, int>& w, double alpha, double beta,
         double gamma, double delta, double eps_shift) {
        TurnoverInstance t;
        t.w = weights_from_tuple(w);
        t.alpha = alpha;
        t.beta = beta;
        t.gamma = gamma;
        t.delta = delta;
        return turnover_residual(t, eps_shift);
      },
      py::arg("weights"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"),
      py::arg("delta"), py::arg("eps_shift") = 0.0,
      "Frobenius norm of LHS - RHS of the turnover relation.");
  m.def("qubit_subspace_blocks", &qubit_subspace_blocks,
        "(permutation, block sizes) of the zero-pattern basis split.");
  m.def("block_offdiagonal_mass", &block_offdiagonal_mass, py::arg("u"),
        "Frobenius mass outside the direct-sum blocks.");
  m.def(
      "rewrite_turnover",
      [](const Circuit& c, std::size_t at, const std::string& dir) {
        if (dir == "ltor") return rewrite_turnover(c, at, Direction::LtoR);
        if (dir == "rtol") return rewrite_turnover(c, at, Direction::RtoL);
        throw std::invalid_argument("direction must be 'ltor' or 'rtol'");
      },
      py::arg("circuit"), py::arg("at"), py::arg("direction"),
      "Rewrite gates [at, at+2] through the turnover relation.");

  // ---- optimizer ------------------------------------------------------
  m.def("infidelity", &infidelity, py::arg("wl"), py::arg("wr"),
        "1 - |tr(WL WR^dag)|^2 / d^2, clamped into [0, 1].");
  m.def("multi_step_infidelity", &multi_step_infidelity, py::arg("wl"),
        py::arg("wr"), py::arg("nb"));
  m.def("lower_bound", &lower_bound, py::arg("c1"), py::arg("nb"),
        "1 - (1 - c1)^nb, the repeated-block infidelity floor.");

  py::class_<OptResult>(m, "OptResult")
      .def_readonly("best_params", &OptResult::best_params)
      .def_readonly("best_infidelity", &OptResult::best_infidelity)
      .def_readonly("iterations_used", &OptResult::iterations_used)
      .def_readonly("converged", &OptResult::converged)
      .def_readonly("restart_infidelities", &OptResult::restart_infidelities)
      .def("__repr__", [](const OptResult& r) {
        return "OptResult(best_infidelity=" +
               std::to_string(r.best_infidelity) + ", converged=" +
               (r.converged ? std::string("True") : std::string("False")) +
               ")";
      });

  m.def(
      "minimize",
      [](const CostFn& cost, const Eigen::VectorXd& init, int max_iterations,
         double gradient_step, double convergence_tol, int restarts,
         double perturbation_scale, std::uint64_t seed) {
        return minimize(cost, init,
                        make_config(max_iterations, gradient_step,
                                    convergence_tol, restarts,
                                    perturbation_scale, seed));
      },
      py::arg("cost"), py::arg("init"), py::arg("max_iterations") = 200,
      py::arg("gradient_step") = 1e-6, py::arg("convergence_tol") = 1e-9,
      py::arg("restarts") = 16, py::arg("perturbation_scale") = 0.5,
      py::arg("seed") = 0,
      "Seeded multi-restart BFGS with finite-difference gradients.");

  // ---- trotter --------------------------------------------------------
  m.def("param_count",
        [](const std::string& s) { return param_count(scheme_from_name(s)); },
        py::arg("scheme"));
  m.def(
      "wl_circuit",
      [](const std::string& s, double theta) {
        return wl_circuit(scheme_from_name(s), theta);
      },
      py::arg("scheme"), py::arg("theta"),
      "One forward step on 3 qutrits, all gates at angle theta.");
  m.def(
      "wr_circuit",
      [](const std::string& s, const Eigen::VectorXd& params) {
        return wr_circuit(scheme_from_name(s), params);
      },
      py::arg("scheme"), py::arg("params"),
      "Mirrored template with one angle per gate.");
  m.def(
      "trotter_circuit",
      [](const std::string& s, double theta, int n_steps) {
        return trotter_circuit(scheme_from_name(s), theta, n_steps);
      },
      py::arg("scheme"), py::arg("theta"), py::arg("n_steps"));
  m.def("theta_step", &theta_step, py::arg("j"), py::arg("t_total"),
        py::arg("n_steps"), "Per-gate angle -J t / n.");
  m.def(
      "optimize_reflection",
      [](const std::string& s, double theta, int nb, int max_iterations,
         double gradient_step, double convergence_tol, int restarts,
         double perturbation_scale, std::uint64_t seed) {
        return optimize_reflection(scheme_from_name(s), theta, nb,
                                   make_config(max_iterations, gradient_step,
                                               convergence_tol, restarts,
                                               perturbation_scale, seed));
      },
      py::arg("scheme"), py::arg("theta"), py::arg("nb"),
      py::arg("max_iterations") = 200, py::arg("gradient_step") = 1e-6,
      py::arg("convergence_tol") = 1e-9, py::arg("restarts") = 16,
      py::arg("perturbation_scale") = 0.5, py::arg("seed") = 0,
      py::call_guard<py::gil_scoped_release>(),
      "Fit the mirrored angles of (W_R)^nb against (W_L)^nb.");

  py::class_<CompressionReport>(m, "CompressionReport")
      .def_readonly("original_gate_count", &CompressionReport::original_gate_count)
      .def_readonly("compressed_gate_count",
                    &CompressionReport::compressed_gate_count)
      .def_readonly("substitutions_performed",
                    &CompressionReport::substitutions_performed)
      .def_readonly("gates_merged", &CompressionReport::gates_merged)
      .def_readonly("max_unitary_deviation",
                    &CompressionReport::max_unitary_deviation)
      .def("__repr__", [](const CompressionReport& r) {
        return "CompressionReport(" +
               std::to_string(r.original_gate_count) + " -> " +
               std::to_string(r.compressed_gate_count) + " gates, " +
               std::to_string(r.substitutions_performed) + " substitutions)";
      });

  m.def(
      "compress",
      [](const std::string& s, double theta, int n_steps, int nb,
         const Eigen::VectorXd& params) {
        return compress(scheme_from_name(s), theta, n_steps, nb, params);
      },
      py::arg("scheme"), py::arg("theta"), py::arg("n_steps"), py::arg("nb"),
      py::arg("params"),
      "Keep one forward step, substitute nb mirrored blocks, merge.");
  m.def(
      "predicted_reduced_gates",
      [](const std::string& s, int nb, long n) {
        return predicted_reduced_gates(scheme_from_name(s), nb, n);
      },
      py::arg("scheme"), py::arg("nb"), py::arg("n"));

  // ---- dynamics ---------------------------------------------------------
  m.attr("RETURN_STATE") = kReturnState;
  m.def(
      "hamiltonian_xy",
      [](double j, int n_sites, bool periodic) {
        return hamiltonian_xy(HamiltonianSpec{j, n_sites, periodic});
      },
      py::arg("j"), py::arg("n_sites") = 3, py::arg("periodic") = false,
      "-J sum over bonds of (Sx~Sx~ + Sy~Sy~).");
  m.def("exact_propagator", &exact_propagator, py::arg("h"), py::arg("t"));
  m.def("return_probability", &return_probability, py::arg("u"),
        "|<202|U|202>|^2.");
  m.def("exact_return_curve", &exact_return_curve, py::arg("h"), py::arg("ts"));
  m.def(
      "trotter_return_curve",
      [](const std::string& s, double j, double t_total, int n_steps,
         const std::vector<double>& ts) {
        return trotter_return_curve(scheme_from_name(s), j, t_total, n_steps,
                                    ts);
      },
      py::arg("scheme"), py::arg("j"), py::arg("t_total"), py::arg("n_steps"),
      py::arg("ts"));
  m.def(
      "compressed_return_curve",
      [](const std::string& s, double j, double t_total, int n_steps, int nb,
         const Eigen::VectorXd& params, const std::vector<double>& ts) {
        return compressed_return_curve(scheme_from_name(s), j, t_total,
                                       n_steps, nb, params, ts);
      },
      py::arg("scheme"), py::arg("j"), py::arg("t_total"), py::arg("n_steps"),
      py::arg("nb"), py::arg("params"), py::arg("ts"));
  m.def("time_grid", &time_grid, py::arg("t0"), py::arg("t1"), py::arg("dt"),
        "Half-open uniform grid [t0, t1).");
}
