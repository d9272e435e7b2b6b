#include "qturn/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace qturn {

Mat hamiltonian_xy(const HamiltonianSpec& spec) {
  if (spec.n_sites < 2 || spec.n_sites > 6)
    throw std::invalid_argument("hamiltonian_xy: n_sites out of range");
  int dim = 1;
  for (int i = 0; i < spec.n_sites; ++i) dim *= 3;
  const Mat sx = spin_operator(Axis::X, Rep::Adjoint);
  const Mat sy = spin_operator(Axis::Y, Rep::Adjoint);
  auto site_op = [&](const Mat& a, int site) {
    int left = 1, right = 1;
    for (int i = 0; i < site; ++i) left *= 3;
    for (int i = site + 1; i < spec.n_sites; ++i) right *= 3;
    return kron(kron(Mat::Identity(left, left), a),
                Mat::Identity(right, right));
  };
  Mat h = Mat::Zero(dim, dim);
  const int bonds = spec.periodic ? spec.n_sites : spec.n_sites - 1;
  for (int b = 0; b < bonds; ++b) {
    const int i = b, k = (b + 1) % spec.n_sites;
    h -= spec.j * (site_op(sx, i) * site_op(sx, k) +
                   site_op(sy, i) * site_op(sy, k));
  }
  return h;
}

Mat exact_propagator(const Mat& h, double t) {
  if ((h - h.adjoint()).norm() > 1e-12)
    throw std::invalid_argument("exact_propagator: matrix not Hermitian");
  return expi_hermitian(h, t);
}

double return_probability(const Mat& u) {
  return std::norm(u(kReturnState, kReturnState));
}

std::vector<double> exact_return_curve(const Mat& h,
                                       const std::vector<double>& ts) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const auto& w = es.eigenvalues();
  const Mat& v = es.eigenvectors();
  std::vector<double> out;
  out.reserve(ts.size());
  for (double t : ts) {
    cxd amp = 0.0;
    for (Eigen::Index k = 0; k < w.size(); ++k)
      amp += std::norm(v(kReturnState, k)) * std::exp(cxd(0.0, -w(k) * t));
    out.push_back(std::norm(amp));
  }
  return out;
}

namespace {

// Return probabilities after each block of a block sequence, streamed
// on the |202> state: entry k is p after k blocks (entry 0 is p(0)).
std::vector<double> stream_blocks(const std::vector<const Circuit*>& blocks) {
  Vec psi = Vec::Zero(27);
  psi(kReturnState) = 1.0;
  std::vector<double> p;
  p.reserve(blocks.size() + 1);
  p.push_back(1.0);
  for (const Circuit* c : blocks) {
    psi = apply_circuit(psi, *c);
    p.push_back(std::norm(psi(kReturnState)));
  }
  return p;
}

std::vector<double> sample_curve(const std::vector<double>& per_step,
                                 double dt, const std::vector<double>& ts) {
  std::vector<double> out;
  out.reserve(ts.size());
  const int n = int(per_step.size()) - 1;
  for (double t : ts) {
    int k = int(std::floor(t / dt));
    k = std::max(0, std::min(n, k));
    out.push_back(per_step[size_t(k)]);
  }
  return out;
}

}  // namespace

std::vector<double> trotter_return_curve(Scheme s, double j, double t_total,
                                         int n_steps,
                                         const std::vector<double>& ts) {
  const Circuit step =
      wl_circuit(s == Scheme::TREF ? Scheme::T1 : s,
                 theta_step(j, t_total, n_steps));
  std::vector<const Circuit*> blocks(size_t(n_steps), &step);
  return sample_curve(stream_blocks(blocks), t_total / n_steps, ts);
}

std::vector<double> compressed_return_curve(Scheme s, double j, double t_total,
                                            int n_steps, int nb,
                                            const Eigen::VectorXd& theta_r,
                                            const std::vector<double>& ts) {
  const Circuit wl =
      wl_circuit(s == Scheme::TREF ? Scheme::T1 : s,
                 theta_step(j, t_total, n_steps));
  const Circuit wr = wr_circuit(s, theta_r);
  std::vector<const Circuit*> blocks;
  blocks.reserve(size_t(n_steps));
  int pos = 0;
  while (pos < n_steps) {
    blocks.push_back(&wl);
    ++pos;
    if (n_steps - pos >= nb) {
      for (int b = 0; b < nb; ++b) blocks.push_back(&wr);
      pos += nb;
    }
  }
  return sample_curve(stream_blocks(blocks), t_total / n_steps, ts);
}

std::vector<double> time_grid(double t0, double t1, double dt) {
  std::vector<double> ts;
  for (int k = 0;; ++k) {
    const double t = t0 + k * dt;
    if (t >= t1 - 1e-12) break;
    ts.push_back(t);
  }
  return ts;
}

}  // namespace qturn
