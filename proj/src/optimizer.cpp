#include "qturn/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace qturn {

double infidelity(const Mat& wl, const Mat& wr) {
  if (wl.rows() != wr.rows() || wl.cols() != wr.cols())
    throw std::invalid_argument("infidelity: dimension mismatch");
  const double d = double(wl.rows());
  const cxd tr = (wl * wr.adjoint()).trace();
  const double c = 1.0 - std::norm(tr) / (d * d);
  return std::clamp(c, 0.0, 1.0);
}

double multi_step_infidelity(const Mat& wl, const Mat& wr, int nb) {
  if (nb < 1) throw std::invalid_argument("multi_step_infidelity: nb < 1");
  return infidelity(matrix_power(wl, nb), matrix_power(wr, nb));
}

double lower_bound(double c1, int nb) {
  return 1.0 - std::pow(1.0 - c1, nb);
}

namespace {

Eigen::VectorXd fd_gradient(const CostFn& cost, const Eigen::VectorXd& x,
                            double h) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd p = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    p(i) = x(i) + h;
    const double fp = cost(p);
    p(i) = x(i) - h;
    const double fm = cost(p);
    p(i) = x(i);
    g(i) = (fp - fm) / (2.0 * h);
  }
  return g;
}

struct RunOutcome {
  Eigen::VectorXd x;
  double f;
  int iterations;
  bool converged;
};

RunOutcome bfgs_run(const CostFn& cost, Eigen::VectorXd x,
                    const OptimizerConfig& cfg) {
  const Eigen::Index n = x.size();
  double f = cost(x);
  Eigen::VectorXd g = fd_gradient(cost, x, cfg.gradient_step);
  Eigen::MatrixXd b = Eigen::MatrixXd::Identity(n, n);  // inverse Hessian
  int it = 0;
  bool converged = false;
  for (; it < cfg.max_iterations; ++it) {
    if (f <= 1e-15 || g.cwiseAbs().maxCoeff() < cfg.convergence_tol) {
      converged = true;
      break;
    }
    Eigen::VectorXd dir = -(b * g);
    if (dir.dot(g) >= 0.0) {  // not a descent direction; reset
      b.setIdentity();
      dir = -g;
    }
    // Backtracking line search with an Armijo decrease condition.
    double step = 1.0;
    double fnew = f;
    Eigen::VectorXd xnew = x;
    bool found = false;
    const double slope = dir.dot(g);
    for (int ls = 0; ls < 48; ++ls) {
      xnew = x + step * dir;
      fnew = cost(xnew);
      if (std::isfinite(fnew) && fnew <= f + 1e-4 * step * slope) {
        found = true;
        break;
      }
      step *= 0.5;
    }
    if (!found) break;  // line-search failure: stop this restart
    const Eigen::VectorXd gnew = fd_gradient(cost, xnew, cfg.gradient_step);
    const Eigen::VectorXd s = xnew - x;
    const Eigen::VectorXd y = gnew - g;
    const double sy = s.dot(y);
    if (sy > 1e-12) {
      const Eigen::VectorXd by = b * y;
      const double ysy = y.dot(by);
      b += ((sy + ysy) / (sy * sy)) * (s * s.transpose()) -
           (by * s.transpose() + s * by.transpose()) / sy;
    } else {
      b.setIdentity();
    }
    x = xnew;
    f = fnew;
    g = gnew;
  }
  return {x, f, it, converged};
}

}  // namespace

OptResult minimize(const CostFn& cost, const Eigen::VectorXd& init,
                   const OptimizerConfig& cfg) {
  if (cfg.restarts < 1)
    throw std::invalid_argument("minimize: restarts must be >= 1");
  if (!std::isfinite(cost(init)))
    throw std::invalid_argument("minimize: cost not finite at init");

  std::mt19937_64 rng(cfg.rng_seed);
  std::uniform_real_distribution<double> u(-cfg.perturbation_scale,
                                           cfg.perturbation_scale);
  OptResult res;
  res.best_infidelity = std::numeric_limits<double>::infinity();
  for (int r = 0; r < cfg.restarts; ++r) {
    Eigen::VectorXd x0 = init;
    if (r > 0)
      for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) += u(rng);
    RunOutcome run = bfgs_run(cost, std::move(x0), cfg);
    res.iterations_used += run.iterations;
    res.converged = res.converged || run.converged;
    res.restart_infidelities.push_back(run.f);
    if (run.f < res.best_infidelity) {
      res.best_infidelity = run.f;
      res.best_params = run.x;
    }
  }
  return res;
}

}  // namespace qturn
