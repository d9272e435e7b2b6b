#pragma once

#include <string>
#include <utility>

#include "qturn/circuit.hpp"
#include "qturn/optimizer.hpp"

namespace qturn {

// Decomposition schemes for one step of the three-site XY evolution,
// plus the reference pair whose mirror identity is exact.
enum class Scheme { T1, T2, T3, T4, T5, T6, TREF };

Scheme scheme_from_name(const std::string& name);
std::string scheme_name(Scheme s);

// Number of free angles in the mirrored template (one per gate).
int param_count(Scheme s);

// One forward step W_L on 3 qutrits, all gates at angle theta.
// TREF shares T1's forward step and is rejected here.
Circuit wl_circuit(Scheme s, double theta);

// Mirrored template W_R with one independent angle per gate,
// assigned positionally in circuit order.
Circuit wr_circuit(Scheme s, const Eigen::VectorXd& params);

// n_steps concatenations of the forward step.
Circuit trotter_circuit(Scheme s, double theta, int n_steps);

// Per-gate angle reproducing exp(-i t H) for coupling J: the gates
// carry exp(-i theta K) while H = -J sum(K), so theta = -J t / n.
double theta_step(double j, double t_total, int n_steps);

// Minimize multi_step_infidelity(WL(theta)^nb, WR(params)^nb) over the
// mirrored angles, starting from params = theta everywhere.
OptResult optimize_reflection(Scheme s, double theta, int nb,
                              const OptimizerConfig& cfg);

struct CompressionReport {
  int original_gate_count = 0;
  int compressed_gate_count = 0;
  int substitutions_performed = 0;
  int gates_merged = 0;
  // Infidelity of compressed vs uncompressed full-sequence unitaries.
  double max_unitary_deviation = 0.0;
};

// Walk the n_steps blocks left to right: keep one W_L, replace the
// next nb blocks with W_R(theta_r) copies, repeat; trailing blocks
// that cannot fill a period stay W_L. Then run merge_pass.
std::pair<Circuit, CompressionReport> compress(Scheme s, double theta,
                                               int n_steps, int nb,
                                               const Eigen::VectorXd& theta_r);

// Closed-form count of gates removed by compression at the supported
// (scheme, nb) pairs; (T2,*) are stated piecewise in n, (T1,1) removes
// n-1 gates, (T3,2) uses the exact form whose large-n limit is 2n/3.
long predicted_reduced_gates(Scheme s, int nb, long n);

}  // namespace qturn
