#include "qturn/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace qturn {

Mat closed_form_single_axis(Axis axis, double angle) {
  const Mat s = spin_operator(axis, Rep::Adjoint);
  const Mat k = kron(s, s);
  const double sh = std::sin(angle / 2.0);
  return Mat::Identity(9, 9) - cxd(0.0, std::sin(angle)) * k -
         (2.0 * sh * sh) * (k * k);
}

Mat gate_matrix(const AxisWeights& w, double angle) {
  if (!w.valid()) throw std::invalid_argument("gate_matrix: bad weights");
  if (w.nonzero_count() == 1) {
    // (-S)⊗(-S) = S⊗S, so a single -1 weight matches the +1 gate.
    Axis axis = w.sx ? Axis::X : (w.sy ? Axis::Y : Axis::Z);
    return closed_form_single_axis(axis, angle);
  }
  const Mat g = weighted_generator(w, Rep::Adjoint);
  return expi_hermitian(kron(g, g), angle);
}

Mat xy_pair_gate(double angle) {
  const Mat sx = spin_operator(Axis::X, Rep::Adjoint);
  const Mat sy = spin_operator(Axis::Y, Rep::Adjoint);
  return expi_hermitian(kron(sx, sx) + kron(sy, sy), angle);
}

Mat embed(const Mat& gate, int left_site, int n_sites) {
  if (gate.rows() != 9 || gate.cols() != 9)
    throw std::invalid_argument("embed: gate must be 9x9");
  if (n_sites < 2 || n_sites > 6)
    throw std::invalid_argument("embed: n_sites out of range");
  if (left_site < 0 || left_site > n_sites - 2)
    throw std::invalid_argument("embed: left_site out of range");
  auto dim = [](int sites) {
    int d = 1;
    for (int i = 0; i < sites; ++i) d *= 3;
    return d;
  };
  Mat out = kron(Mat::Identity(dim(left_site), dim(left_site)), gate);
  const int right = dim(n_sites - left_site - 2);
  return kron(out, Mat::Identity(right, right));
}

}  // namespace qturn
