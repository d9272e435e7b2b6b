#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qturn/gates.hpp"

namespace qturn {

enum class Gen { X, Y, Z, XY, Weighted };

// One two-qutrit gate on the adjacent pair (site, site+1).
struct GateInstance {
  Gen gen = Gen::X;
  int site = 0;
  double angle = 0.0;
  AxisWeights weights{};  // only read when gen == Weighted

  bool same_generator(const GateInstance& other) const;
};

// Ordered gate sequence; the first gate is applied to the state first.
struct Circuit {
  int n = 2;
  std::vector<GateInstance> gates;
};

// 9x9 unitary of one gate.
Mat gate_unitary(const GateInstance& g);

// Full 3^n x 3^n unitary; for gates [g1, g2, ...] this is ... E(g2) E(g1).
Mat circuit_unitary(const Circuit& c);

// Apply the circuit to a state without forming the full unitary.
Vec apply_circuit(const Vec& state, const Circuit& c);

// Fuse same-generator gates on the same site pair with summed angle.
// Two gates fuse when adjacent in sequence or separated only by gates
// whose site pairs are disjoint from the candidate pair. Summed angles
// are reported in (-pi, pi] for the 2pi-periodic generators; xy-pair
// sums stay as-is because that gate is aperiodic in its angle.
// Idempotent; preserves the circuit unitary.
Circuit merge_pass(const Circuit& c);

nlohmann::json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const nlohmann::json& j);

std::string gen_name(Gen g);
Gen gen_from_name(const std::string& name);

}  // namespace qturn
