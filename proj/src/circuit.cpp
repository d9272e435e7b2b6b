#include "qturn/circuit.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qturn {

bool GateInstance::same_generator(const GateInstance& other) const {
  if (gen != other.gen) return false;
  if (gen == Gen::Weighted) return weights == other.weights;
  return true;
}

Mat gate_unitary(const GateInstance& g) {
  switch (g.gen) {
    case Gen::X:
      return closed_form_single_axis(Axis::X, g.angle);
    case Gen::Y:
      return closed_form_single_axis(Axis::Y, g.angle);
    case Gen::Z:
      return closed_form_single_axis(Axis::Z, g.angle);
    case Gen::XY:
      return xy_pair_gate(g.angle);
    case Gen::Weighted:
      return gate_matrix(g.weights, g.angle);
  }
  throw std::invalid_argument("gate_unitary: bad generator");
}

Mat circuit_unitary(const Circuit& c) {
  int dim = 1;
  for (int i = 0; i < c.n; ++i) dim *= 3;
  Mat u = Mat::Identity(dim, dim);
  for (const GateInstance& g : c.gates)
    u = embed(gate_unitary(g), g.site, c.n) * u;
  return u;
}

Vec apply_circuit(const Vec& state, const Circuit& c) {
  int dim = 1;
  for (int i = 0; i < c.n; ++i) dim *= 3;
  if (state.size() != dim)
    throw std::invalid_argument("apply_circuit: state dimension mismatch");
  Vec psi = state;
  Vec in(9), out(9);
  for (const GateInstance& g : c.gates) {
    if (g.site < 0 || g.site > c.n - 2)
      throw std::invalid_argument("apply_circuit: gate site out of range");
    const Mat u = gate_unitary(g);
    int right = 1;
    for (int i = 0; i < c.n - g.site - 2; ++i) right *= 3;
    const int left = dim / (9 * right);
    for (int l = 0; l < left; ++l)
      for (int r = 0; r < right; ++r) {
        const int base = l * 9 * right + r;
        for (int m = 0; m < 9; ++m) in(m) = psi(base + m * right);
        out.noalias() = u * in;
        for (int m = 0; m < 9; ++m) psi(base + m * right) = out(m);
      }
  }
  return psi;
}

namespace {
bool sites_disjoint(const GateInstance& a, const GateInstance& b) {
  return a.site + 1 < b.site || b.site + 1 < a.site;
}
}  // namespace

Circuit merge_pass(const Circuit& c) {
  Circuit out = c;
  bool changed = true;
  while (changed) {
    changed = false;
    auto& gs = out.gates;
    for (size_t i = 0; i < gs.size() && !changed; ++i) {
      for (size_t j = i + 1; j < gs.size(); ++j) {
        if (gs[j].site == gs[i].site && gs[j].same_generator(gs[i])) {
          const double sum = gs[i].angle + gs[j].angle;
          // Only the single-axis and weighted gates are 2pi-periodic
          // (integer generator spectrum); the xy-pair spectrum contains
          // ±sqrt2, so wrapping its angle would change the unitary.
          gs[i].angle = gs[i].gen == Gen::XY ? sum : normalize_angle(sum);
          gs.erase(gs.begin() + j);
          changed = true;
          break;
        }
        if (!sites_disjoint(gs[i], gs[j])) break;
      }
    }
  }
  return out;
}

std::string gen_name(Gen g) {
  switch (g) {
    case Gen::X:
      return "x";
    case Gen::Y:
      return "y";
    case Gen::Z:
      return "z";
    case Gen::XY:
      return "xy";
    case Gen::Weighted:
      break;
  }
  throw std::invalid_argument("gen_name: weighted gates are not serializable");
}

Gen gen_from_name(const std::string& name) {
  if (name == "x") return Gen::X;
  if (name == "y") return Gen::Y;
  if (name == "z") return Gen::Z;
  if (name == "xy") return Gen::XY;
  throw std::invalid_argument("gen_from_name: unknown generator '" + name + "'");
}

nlohmann::json circuit_to_json(const Circuit& c) {
  nlohmann::json gates = nlohmann::json::array();
  for (const GateInstance& g : c.gates)
    gates.push_back({{"gen", gen_name(g.gen)}, {"site", g.site}, {"angle", g.angle}});
  return {{"n", c.n}, {"gates", gates}};
}

Circuit circuit_from_json(const nlohmann::json& j) {
  Circuit c;
  c.n = j.at("n").get<int>();
  for (const auto& jg : j.at("gates")) {
    GateInstance g;
    g.gen = gen_from_name(jg.at("gen").get<std::string>());
    g.site = jg.at("site").get<int>();
    g.angle = jg.at("angle").get<double>();
    if (g.site < 0 || g.site > c.n - 2)
      throw std::invalid_argument("circuit_from_json: gate site out of range");
    c.gates.push_back(g);
  }
  return c;
}

}  // namespace qturn
