#include "qturn/trotter.hpp"

#include <stdexcept>
#include <vector>

namespace qturn {

namespace {

struct Slot {
  Gen gen;
  int site;
};

// Forward templates; the mirrored template is the reverse, except for
// the reference pair whose mirror is the commutation-exact rearrangement.
const std::vector<Slot>& wl_template(Scheme s) {
  static const std::vector<Slot> t1{{Gen::X, 0}, {Gen::X, 1}, {Gen::Y, 0}, {Gen::Y, 1}};
  static const std::vector<Slot> t2{{Gen::X, 0}, {Gen::Y, 0}, {Gen::X, 1}, {Gen::Y, 1}};
  static const std::vector<Slot> t3{{Gen::XY, 0}, {Gen::XY, 1}};
  static const std::vector<Slot> t4{{Gen::X, 0}, {Gen::Y, 1}, {Gen::X, 1}, {Gen::Y, 0}};
  static const std::vector<Slot> t5{{Gen::XY, 0}, {Gen::X, 1}, {Gen::Y, 1}};
  static const std::vector<Slot> t6{{Gen::X, 0}, {Gen::XY, 1}, {Gen::Y, 0}};
  switch (s) {
    case Scheme::T1:
    case Scheme::TREF:
      return t1;
    case Scheme::T2:
      return t2;
    case Scheme::T3:
      return t3;
    case Scheme::T4:
      return t4;
    case Scheme::T5:
      return t5;
    case Scheme::T6:
      return t6;
  }
  throw std::invalid_argument("wl_template: bad scheme");
}

std::vector<Slot> wr_template(Scheme s) {
  if (s == Scheme::TREF)
    return {{Gen::X, 1}, {Gen::X, 0}, {Gen::Y, 1}, {Gen::Y, 0}};
  std::vector<Slot> t = wl_template(s);
  return {t.rbegin(), t.rend()};
}

}  // namespace

Scheme scheme_from_name(const std::string& name) {
  if (name == "T1") return Scheme::T1;
  if (name == "T2") return Scheme::T2;
  if (name == "T3") return Scheme::T3;
  if (name == "T4") return Scheme::T4;
  if (name == "T5") return Scheme::T5;
  if (name == "T6") return Scheme::T6;
  if (name == "TREF") return Scheme::TREF;
  throw std::invalid_argument("scheme_from_name: unknown scheme '" + name + "'");
}

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::T1: return "T1";
    case Scheme::T2: return "T2";
    case Scheme::T3: return "T3";
    case Scheme::T4: return "T4";
    case Scheme::T5: return "T5";
    case Scheme::T6: return "T6";
    case Scheme::TREF: return "TREF";
  }
  throw std::invalid_argument("scheme_name: bad scheme");
}

int param_count(Scheme s) { return int(wr_template(s).size()); }

Circuit wl_circuit(Scheme s, double theta) {
  if (s == Scheme::TREF)
    throw std::invalid_argument(
        "wl_circuit: the reference pair shares T1's forward step");
  Circuit c{3, {}};
  for (const Slot& slot : wl_template(s))
    c.gates.push_back({slot.gen, slot.site, theta, {}});
  return c;
}

Circuit wr_circuit(Scheme s, const Eigen::VectorXd& params) {
  const std::vector<Slot> t = wr_template(s);
  if (params.size() != Eigen::Index(t.size()))
    throw std::invalid_argument("wr_circuit: wrong parameter count");
  Circuit c{3, {}};
  for (size_t i = 0; i < t.size(); ++i)
    c.gates.push_back({t[i].gen, t[i].site, params(Eigen::Index(i)), {}});
  return c;
}

Circuit trotter_circuit(Scheme s, double theta, int n_steps) {
  if (n_steps < 1) throw std::invalid_argument("trotter_circuit: n_steps < 1");
  const Circuit step = wl_circuit(s == Scheme::TREF ? Scheme::T1 : s, theta);
  Circuit c{3, {}};
  c.gates.reserve(step.gates.size() * size_t(n_steps));
  for (int i = 0; i < n_steps; ++i)
    c.gates.insert(c.gates.end(), step.gates.begin(), step.gates.end());
  return c;
}

double theta_step(double j, double t_total, int n_steps) {
  return -j * t_total / double(n_steps);
}

OptResult optimize_reflection(Scheme s, double theta, int nb,
                              const OptimizerConfig& cfg) {
  if (nb < 1) throw std::invalid_argument("optimize_reflection: nb < 1");
  const Scheme fwd = s == Scheme::TREF ? Scheme::T1 : s;
  const Mat wl = matrix_power(circuit_unitary(wl_circuit(fwd, theta)), nb);
  auto cost = [&, nb](const Eigen::VectorXd& p) {
    const Mat wr = circuit_unitary(wr_circuit(s, p));
    return infidelity(wl, matrix_power(wr, nb));
  };
  Eigen::VectorXd init =
      Eigen::VectorXd::Constant(param_count(s), theta);
  return minimize(cost, init, cfg);
}

std::pair<Circuit, CompressionReport> compress(Scheme s, double theta,
                                               int n_steps, int nb,
                                               const Eigen::VectorXd& theta_r) {
  if (nb < 1) throw std::invalid_argument("compress: nb < 1");
  if (n_steps < nb + 1)
    throw std::invalid_argument("compress: n_steps must be at least nb + 1");
  const Scheme fwd = s == Scheme::TREF ? Scheme::T1 : s;
  const Circuit wl = wl_circuit(fwd, theta);
  const Circuit wr = wr_circuit(s, theta_r);

  Circuit blocks{3, {}};
  CompressionReport report;
  int pos = 0;
  while (pos < n_steps) {
    blocks.gates.insert(blocks.gates.end(), wl.gates.begin(), wl.gates.end());
    ++pos;
    if (n_steps - pos >= nb) {
      for (int b = 0; b < nb; ++b)
        blocks.gates.insert(blocks.gates.end(), wr.gates.begin(),
                            wr.gates.end());
      pos += nb;
      ++report.substitutions_performed;
    }
  }

  const Circuit merged = merge_pass(blocks);
  report.original_gate_count = int(wl.gates.size()) * n_steps;
  report.compressed_gate_count = int(merged.gates.size());
  report.gates_merged = int(blocks.gates.size()) - int(merged.gates.size());
  report.max_unitary_deviation = infidelity(
      circuit_unitary(merged), circuit_unitary(trotter_circuit(s, theta, n_steps)));
  return {merged, report};
}

long predicted_reduced_gates(Scheme s, int nb, long n) {
  if (s == Scheme::T1 && nb == 1) return n - 1;
  if (s == Scheme::T3 && nb == 2) return 2 * (n / 3) - 1 + (n % 3 >= 1 ? 1 : 0);
  if (s == Scheme::T2 && nb == 4) return 2 * n / 5 - 1;
  if (s == Scheme::T2 && nb == 5) return n % 6 == 0 ? n / 3 - 1 : 2 * (n / 6);
  throw std::invalid_argument("predicted_reduced_gates: unsupported pair");
}

}  // namespace qturn
