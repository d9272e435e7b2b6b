#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qturn/circuit.hpp"

namespace qturn {

// One turnover configuration: six gates built from a common generator,
// three on the left pattern with angles (alpha, beta, gamma), three on
// the mirrored pattern with (delta, eps, zeta). The relation holds
// exactly when eps = alpha + gamma and zeta = beta - delta (mod 2pi).
struct TurnoverInstance {
  AxisWeights w{1, 0, 0};
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;

  double eps() const { return alpha + gamma; }
  double zeta() const { return beta - delta; }
};

// Gate used inside turnover relations: exp(-i t K) for a single axis
// (the closed-form gate) and exp(+i t K) for multi-axis weights (the
// convention under which the conjugated families are stated).
Mat turnover_gate(const AxisWeights& w, double theta);

// Frobenius norm of LHS - RHS of the turnover relation; eps_shift
// offsets the derived eps angle (nonzero values serve as a negative
// control that must break the identity).
double turnover_residual(const TurnoverInstance& t, double eps_shift = 0.0);

// Same relation restricted to multi-axis generator families.
double conjugated_family_residual(const AxisWeights& w, double alpha,
                                  double beta, double gamma, double delta);

// Max residual over the short same-axis identities on three sites:
// U01(a) U12(a) U01(a) = U01(2a) U12(a) = U12(a) U01(2a), plus the
// neighbor commutation U01(a) U12(a) = U12(a) U01(a).
double simple_identity_suite(Axis axis, double alpha);

// Basis permutation that splits three qutrits by the zero-pattern of
// each site (level 0 vs levels {1,2}), ordered as
// |000>, |00a>, |0a0>, |0ab>, |a00>, |a0b>, |ab0>, |abc>.
// Returns (perm, block_sizes) with perm[new] = old.
std::pair<std::vector<int>, std::vector<int>> qubit_subspace_blocks();

// Frobenius mass outside the direct-sum blocks after permuting U.
double block_offdiagonal_mass(const Mat& u27);

// Residual between the final 8x8 block of the permuted same-axis
// turnover product and the corresponding two-level Y⊗Y gate product.
double qubit_block_residual(double alpha, double beta, double gamma);

enum class Direction { LtoR, RtoL };

// Rewrite gates [at, at+2] through the turnover relation. The V pattern
// sites (i, i+1, i) maps to (i+1, i, i+1) and vice versa; the free
// angle split uses delta = zeta = beta/2 (resp. alpha = gamma = eps/2).
Circuit rewrite_turnover(const Circuit& c, size_t at, Direction dir);

}  // namespace qturn
