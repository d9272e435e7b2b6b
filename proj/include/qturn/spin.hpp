#pragma once

#include "qturn/types.hpp"

namespace qturn {

enum class Axis { X, Y, Z };
enum class Rep { Standard, Adjoint };

// Integer axis weights s_a in {-1, 0, +1}, not all zero.
struct AxisWeights {
  int sx = 0;
  int sy = 0;
  int sz = 0;

  bool valid() const;
  int nonzero_count() const;
  bool operator==(const AxisWeights&) const = default;
};

// Spin-1 operator for one axis in the standard or adjoint representation.
// Matrices come from literal entry tables, not exponentials.
Mat spin_operator(Axis axis, Rep rep);

enum class Conj { Py, Pz, Uplus, Uminus, Vplus, Vminus, Wplus, Wminus };

// Fixed permutation / conjugation unitaries used by the gate families.
Mat conjugation_matrix(Conj kind);

// Two-sign conjugation unitary M_{s1 s2}; s1, s2 in {+1, -1}.
Mat m_matrix(int s1, int s2);

// sum_a s_a S^a in the requested representation.
Mat weighted_generator(const AxisWeights& w, Rep rep);

// Max Frobenius residual over the core operator identities:
// the three cyclic commutators, the Casimir sum, even/odd power
// collapse (S^{2n} = S^2, S^{2n+1} = S for n = 1..3) and, in the
// adjoint representation, S^a S^b S^a = 0 for a != b.
double algebra_report(Rep rep);

// Max residual of U+ S^a U+^dag vs the adjoint operator, over axes.
double basis_change_residual();

// Max residual over the conjugation relations that generate the
// two-axis and three-axis gate families:
//   U±^dag Sy~ U± = (-Sz~ ∓ Sx~)/sqrt2
//   V±^dag Sx~ V± = (-Sy~ ± Sz~)/sqrt2
//   W±^dag Sz~ W± = ( Sx~ ∓ Sy~)/sqrt2
//   M^dag  Sz~ M  = ( Sx~ - s1 Sy~ + s2 Sz~)/sqrt3
// plus unitarity of every conjugation matrix.
double conjugation_family_residual();

// Residual of the two-qubit embedding of Sx~: the 4x4 matrix carrying
// Sx~ on the first three basis states equals (X⊗Y - Y⊗X)/2, which is
// i(A⊗A^dag - A^dag⊗A) with A = (-iX + Y)/2.
double embedded_pair_decomposition_residual();

}  // namespace qturn
