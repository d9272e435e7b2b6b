#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qturn/types.hpp"

namespace qturn {

// Trace infidelity 1 - |tr(WL WR^dag)|^2 / d^2 for d x d unitaries,
// clamped into [0, 1] against roundoff.
double infidelity(const Mat& wl, const Mat& wr);

// infidelity(WL^nb, WR^nb). The normalization stays 1/d^2 for every
// nb: the trace argument keeps the original dimension.
double multi_step_infidelity(const Mat& wl, const Mat& wr, int nb);

// 1 - (1 - c1)^nb, the repeated-block infidelity floor.
double lower_bound(double c1, int nb);

struct OptimizerConfig {
  int max_iterations = 200;
  double gradient_step = 1e-6;    // central finite-difference h
  double convergence_tol = 1e-9;  // gradient max-norm threshold
  int restarts = 16;
  double perturbation_scale = 0.5;
  std::uint64_t rng_seed = 0;
};

struct OptResult {
  Eigen::VectorXd best_params;
  double best_infidelity = 0.0;
  int iterations_used = 0;
  bool converged = false;
  std::vector<double> restart_infidelities;
};

using CostFn = std::function<double(const Eigen::VectorXd&)>;

// BFGS with central finite-difference gradients and seeded random
// restarts. Restart 0 starts at init; later restarts perturb init by
// uniform(-scale, +scale) per coordinate. Deterministic per seed.
OptResult minimize(const CostFn& cost, const Eigen::VectorXd& init,
                   const OptimizerConfig& cfg);

}  // namespace qturn
