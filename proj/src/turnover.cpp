#include "qturn/turnover.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qturn {

Mat turnover_gate(const AxisWeights& w, double theta) {
  if (w.nonzero_count() == 1) return gate_matrix(w, theta);
  const Mat g = weighted_generator(w, Rep::Adjoint);
  return expi_hermitian(kron(g, g), -theta);  // exp(+i theta K)
}

double turnover_residual(const TurnoverInstance& t, double eps_shift) {
  const Mat i3 = Mat::Identity(3, 3);
  auto left = [&](double a) { return kron(turnover_gate(t.w, a), i3); };
  auto right = [&](double a) { return kron(i3, turnover_gate(t.w, a)); };
  const Mat lhs = left(t.alpha) * right(t.beta) * left(t.gamma);
  const Mat rhs = right(t.delta) * left(t.eps() + eps_shift) * right(t.zeta());
  return (lhs - rhs).norm();
}

double conjugated_family_residual(const AxisWeights& w, double alpha,
                                  double beta, double gamma, double delta) {
  if (w.nonzero_count() < 2)
    throw std::invalid_argument(
        "conjugated_family_residual: needs a multi-axis generator");
  return turnover_residual({w, alpha, beta, gamma, delta});
}

double simple_identity_suite(Axis axis, double alpha) {
  AxisWeights w{axis == Axis::X, axis == Axis::Y, axis == Axis::Z};
  const Mat a = embed(gate_matrix(w, alpha), 0, 3);
  const Mat b = embed(gate_matrix(w, alpha), 1, 3);
  const Mat a2 = embed(gate_matrix(w, 2.0 * alpha), 0, 3);
  const Mat chain = a * b * a;
  double worst = (chain - a2 * b).norm();
  worst = std::max(worst, (chain - b * a2).norm());
  worst = std::max(worst, (a * b - b * a).norm());
  return worst;
}

std::pair<std::vector<int>, std::vector<int>> qubit_subspace_blocks() {
  std::vector<int> perm;
  perm.reserve(27);
  for (int mask = 0; mask < 8; ++mask)
    for (int i = 0; i < 27; ++i) {
      const int q0 = i / 9, q1 = (i / 3) % 3, q2 = i % 3;
      const int m = ((q0 != 0) << 2) | ((q1 != 0) << 1) | (q2 != 0);
      if (m == mask) perm.push_back(i);
    }
  return {perm, {1, 2, 2, 4, 2, 4, 4, 8}};
}

namespace {
Mat permute(const Mat& u, const std::vector<int>& perm) {
  const int d = int(perm.size());
  Mat out(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) out(r, c) = u(perm[r], perm[c]);
  return out;
}
}  // namespace

double block_offdiagonal_mass(const Mat& u27) {
  auto [perm, sizes] = qubit_subspace_blocks();
  Mat p = permute(u27, perm);
  int start = 0;
  for (int s : sizes) {
    p.block(start, start, s, s).setZero();
    start += s;
  }
  return p.norm();
}

double qubit_block_residual(double alpha, double beta, double gamma) {
  auto [perm, sizes] = qubit_subspace_blocks();
  const AxisWeights wx{1, 0, 0};
  const Mat lhs = embed(gate_matrix(wx, alpha), 0, 3) *
                  embed(gate_matrix(wx, beta), 1, 3) *
                  embed(gate_matrix(wx, gamma), 0, 3);
  const Mat block = permute(lhs, perm).block(19, 19, 8, 8);

  Mat y2(2, 2);
  y2 << cxd(0, 0), cxd(0, -1), cxd(0, 1), cxd(0, 0);
  const Mat yy = kron(y2, y2);
  const Mat i2 = Mat::Identity(2, 2);
  auto g0 = [&](double t) { return kron(expi_hermitian(yy, t), i2); };
  auto g1 = [&](double t) { return kron(i2, expi_hermitian(yy, t)); };
  const Mat qubit = g0(alpha) * g1(beta) * g0(gamma);
  return (block - qubit).norm();
}

Circuit rewrite_turnover(const Circuit& c, size_t at, Direction dir) {
  if (at + 2 >= c.gates.size())
    throw std::invalid_argument("rewrite_turnover: triple out of range at gate " +
                                std::to_string(at));
  const GateInstance& g0 = c.gates[at];
  const GateInstance& g1 = c.gates[at + 1];
  const GateInstance& g2 = c.gates[at + 2];
  if (!g0.same_generator(g1) || !g0.same_generator(g2))
    throw std::invalid_argument(
        "rewrite_turnover: generator mismatch at gate " + std::to_string(at));
  const int step = dir == Direction::LtoR ? 1 : -1;
  const int lo = std::min(g0.site, g0.site + step);
  if (g1.site != g0.site + step || g2.site != g0.site || lo < 0 ||
      lo > c.n - 3)
    throw std::invalid_argument(
        "rewrite_turnover: site pattern mismatch at gate " + std::to_string(at));

  // Circuit order (first applied first) reverses the operator product,
  // so the middle gate carries the lone mirrored angle's constraint
  // partner and the outer pair sums. Both directions reduce to:
  // angles (a, b, c) -> (b/2, a + c, b/2), sites swapped inner/outer.
  Circuit out = c;
  out.gates[at].site = g1.site;
  out.gates[at].angle = g1.angle / 2.0;
  out.gates[at + 1].site = g0.site;
  out.gates[at + 1].angle = g0.angle + g2.angle;
  out.gates[at + 2].site = g1.site;
  out.gates[at + 2].angle = g1.angle / 2.0;
  return out;
}

}  // namespace qturn
