#pragma once

#include "qturn/spin.hpp"

namespace qturn {

// Two-qutrit gate exp(-i angle (G ⊗ G)) with G the adjoint weighted
// generator. Single-axis weights use the closed polynomial form; other
// weights go through Hermitian eigendecomposition.
Mat gate_matrix(const AxisWeights& w, double angle);

// Literal polynomial form I9 - i sin(a) K - 2 sin^2(a/2) K^2 with
// K = S~ ⊗ S~, valid because K^3 = K for a single axis.
Mat closed_form_single_axis(Axis axis, double angle);

// exp(-i angle (Sx~⊗Sx~ + Sy~⊗Sy~)); a genuinely two-term generator.
// The two terms do not commute, so this is neither U_x·U_y nor the
// single weighted gate with weights (1,1,0).
Mat xy_pair_gate(double angle);

// Embed a 9x9 two-qutrit gate acting on (left_site, left_site+1) into
// an n_sites register; site 0 is the most significant ternary digit.
Mat embed(const Mat& gate, int left_site, int n_sites);

}  // namespace qturn
