#pragma once

#include <vector>

#include "qturn/trotter.hpp"

namespace qturn {

struct HamiltonianSpec {
  double j = 1.0;
  int n_sites = 3;
  bool periodic = false;
};

// XY chain -J sum over bonds of (Sx~ Sx~ + Sy~ Sy~); open boundary
// couples (i, i+1) only, periodic adds the wrap bond.
Mat hamiltonian_xy(const HamiltonianSpec& spec);

// exp(-i t H) via eigendecomposition.
Mat exact_propagator(const Mat& h, double t);

// |<202|U|202>|^2; basis index 20 with site 0 most significant.
constexpr int kReturnState = 20;
double return_probability(const Mat& u);

// p(t) on a time grid via the eigenbasis amplitude sum (no propagator
// matrices formed).
std::vector<double> exact_return_curve(const Mat& h,
                                       const std::vector<double>& ts);

// Trotterized p(t): the state is streamed through the step sequence
// and each grid time reads the amplitude after floor(t / dt) steps.
std::vector<double> trotter_return_curve(Scheme s, double j, double t_total,
                                         int n_steps,
                                         const std::vector<double>& ts);

// Same readout for the compressed sequence: blocks (W_L or W_R copies)
// are streamed in substitution order; block k ends at time k dt. Gate
// merging preserves each boundary unitary, so this equals truncating
// the merged circuit at the same boundaries.
std::vector<double> compressed_return_curve(Scheme s, double j, double t_total,
                                            int n_steps, int nb,
                                            const Eigen::VectorXd& theta_r,
                                            const std::vector<double>& ts);

// Half-open uniform grid [t0, t1) with the given step.
std::vector<double> time_grid(double t0, double t1, double dt);

}  // namespace qturn
