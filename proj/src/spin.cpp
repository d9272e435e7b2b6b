#include "qturn/spin.hpp"

#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace qturn {

namespace {
constexpr cxd I{0.0, 1.0};
const double RT2 = std::sqrt(2.0);
const double RT3 = std::sqrt(3.0);
const double RT6 = std::sqrt(6.0);

Mat make3(std::initializer_list<cxd> vals) {
  Mat m(3, 3);
  int k = 0;
  for (cxd v : vals) m(k / 3, k % 3) = v, ++k;
  return m;
}
}  // namespace

Mat kron(const Mat& a, const Mat& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

Mat expi_hermitian(const Mat& h, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const auto& w = es.eigenvalues();
  const Mat& v = es.eigenvectors();
  Vec phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k)
    phases(k) = std::exp(cxd(0.0, -t * w(k)));
  return v * phases.asDiagonal() * v.adjoint();
}

Mat matrix_power(const Mat& m, int p) {
  if (p < 0) throw std::invalid_argument("matrix_power: negative exponent");
  Mat acc = Mat::Identity(m.rows(), m.cols());
  Mat base = m;
  while (p > 0) {
    if (p & 1) acc = acc * base;
    p >>= 1;
    if (p > 0) base = base * base;
  }
  return acc;
}

double residual(const Mat& a, const Mat& b) { return (a - b).norm(); }

double unitarity_defect(const Mat& u) {
  Mat d = u * u.adjoint() - Mat::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

double normalize_angle(double a) {
  constexpr double pi = 3.14159265358979323846;
  double r = std::fmod(a + pi, 2.0 * pi);
  if (r <= 0.0) r += 2.0 * pi;
  return r - pi;
}

bool AxisWeights::valid() const {
  auto ok = [](int s) { return s >= -1 && s <= 1; };
  return ok(sx) && ok(sy) && ok(sz) && (sx || sy || sz);
}

int AxisWeights::nonzero_count() const {
  return (sx != 0) + (sy != 0) + (sz != 0);
}

Mat spin_operator(Axis axis, Rep rep) {
  if (rep == Rep::Standard) {
    switch (axis) {
      case Axis::X:
        return make3({0, 1 / RT2, 0, 1 / RT2, 0, 1 / RT2, 0, 1 / RT2, 0});
      case Axis::Y:
        return make3({0, -I / RT2, 0, I / RT2, 0, -I / RT2, 0, I / RT2, 0});
      case Axis::Z:
        return make3({1, 0, 0, 0, 0, 0, 0, 0, -1});
    }
  }
  switch (axis) {
    case Axis::X:
      return make3({0, 0, 0, 0, 0, I, 0, -I, 0});
    case Axis::Y:
      return make3({0, 0, I, 0, 0, 0, -I, 0, 0});
    case Axis::Z:
      return make3({0, I, 0, -I, 0, 0, 0, 0, 0});
  }
  throw std::invalid_argument("spin_operator: bad axis");
}

Mat conjugation_matrix(Conj kind) {
  switch (kind) {
    case Conj::Py:
      return make3({0, 1, 0, 1, 0, 0, 0, 0, 1});
    case Conj::Pz:
      return make3({0, 1, 0, 0, 0, 1, 1, 0, 0});
    case Conj::Uplus:
      return make3({-1, 0, 1, I, 0, I, 0, RT2, 0}) / RT2;
    case Conj::Uminus:
      return make3({-1, 0, -1, I, 0, -I, 0, RT2, 0}) / RT2;
    case Conj::Vplus:
      return make3({0, I, I, 0, -1, 1, RT2, 0, 0}) / RT2;
    case Conj::Vminus:
      return make3({0, I, -I, 0, 1, 1, RT2, 0, 0}) / RT2;
    case Conj::Wplus:
      return make3({-1, 1, 0, 0, 0, RT2, I, I, 0}) / RT2;
    case Conj::Wminus:
      return make3({1, 1, 0, 0, 0, RT2, I, -I, 0}) / RT2;
  }
  throw std::invalid_argument("conjugation_matrix: bad kind");
}

Mat m_matrix(int s1, int s2) {
  if ((s1 != 1 && s1 != -1) || (s2 != 1 && s2 != -1))
    throw std::invalid_argument("m_matrix: signs must be +1 or -1");
  double a = s1, b = s2;
  return make3({-a * RT3 * I, RT3 * I, 0,
                -b * I, -a * b * I, 2.0 * I,
                b * RT2, a * b * RT2, RT2}) /
         RT6;
}

Mat weighted_generator(const AxisWeights& w, Rep rep) {
  if (!w.valid()) throw std::invalid_argument("weighted_generator: bad weights");
  return double(w.sx) * spin_operator(Axis::X, rep) +
         double(w.sy) * spin_operator(Axis::Y, rep) +
         double(w.sz) * spin_operator(Axis::Z, rep);
}

double algebra_report(Rep rep) {
  const Mat sx = spin_operator(Axis::X, rep);
  const Mat sy = spin_operator(Axis::Y, rep);
  const Mat sz = spin_operator(Axis::Z, rep);
  const Mat ops[3] = {sx, sy, sz};
  double worst = 0.0;
  auto track = [&](double r) { worst = std::max(worst, r); };

  track(residual(sx * sy - sy * sx, I * sz));
  track(residual(sy * sz - sz * sy, I * sx));
  track(residual(sz * sx - sx * sz, I * sy));
  track(residual(sx * sx + sy * sy + sz * sz, 2.0 * Mat::Identity(3, 3)));
  for (const Mat& s : ops) {
    const Mat s2 = s * s;
    for (int n = 1; n <= 3; ++n) {
      track(residual(matrix_power(s, 2 * n), s2));
      track(residual(matrix_power(s, 2 * n + 1), s));
    }
  }
  if (rep == Rep::Adjoint) {
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (a != b) track((ops[a] * ops[b] * ops[a]).norm());
  }
  return worst;
}

double basis_change_residual() {
  const Mat up = conjugation_matrix(Conj::Uplus);
  double worst = 0.0;
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
    Mat lhs = up * spin_operator(a, Rep::Standard) * up.adjoint();
    worst = std::max(worst, residual(lhs, spin_operator(a, Rep::Adjoint)));
  }
  return worst;
}

double conjugation_family_residual() {
  const Mat sx = spin_operator(Axis::X, Rep::Adjoint);
  const Mat sy = spin_operator(Axis::Y, Rep::Adjoint);
  const Mat sz = spin_operator(Axis::Z, Rep::Adjoint);
  double worst = 0.0;
  auto track = [&](double r) { worst = std::max(worst, r); };

  for (Conj k : {Conj::Py, Conj::Pz, Conj::Uplus, Conj::Uminus, Conj::Vplus,
                 Conj::Vminus, Conj::Wplus, Conj::Wminus})
    track(unitarity_defect(conjugation_matrix(k)));

  for (int s : {1, -1}) {
    Mat u = conjugation_matrix(s > 0 ? Conj::Uplus : Conj::Uminus);
    track(residual(u.adjoint() * sy * u, (-sz - double(s) * sx) / RT2));
    Mat v = conjugation_matrix(s > 0 ? Conj::Vplus : Conj::Vminus);
    track(residual(v.adjoint() * sx * v, (-sy + double(s) * sz) / RT2));
    Mat wm = conjugation_matrix(s > 0 ? Conj::Wplus : Conj::Wminus);
    track(residual(wm.adjoint() * sz * wm, (sx - double(s) * sy) / RT2));
  }
  for (int s1 : {1, -1})
    for (int s2 : {1, -1}) {
      Mat m = m_matrix(s1, s2);
      track(unitarity_defect(m));
      track(residual(m.adjoint() * sz * m,
                     (sx - double(s1) * sy + double(s2) * sz) / RT3));
    }
  return worst;
}

double embedded_pair_decomposition_residual() {
  Mat x2(2, 2), y2(2, 2);
  x2 << 0, 1, 1, 0;
  y2 << 0, -I, I, 0;
  const Mat t = (kron(x2, y2) - kron(y2, x2)) / 2.0;

  // 4x4 carrier of Sx~ on the first three two-qubit basis states.
  Mat embed = Mat::Zero(4, 4);
  embed.topLeftCorner(3, 3) = spin_operator(Axis::X, Rep::Adjoint);

  const Mat a = (-I * x2 + y2) / 2.0;
  const Mat ladder = I * (kron(a, a.adjoint()) - kron(a.adjoint(), a));

  return std::max(residual(t, embed), residual(t, ladder));
}

}  // namespace qturn
