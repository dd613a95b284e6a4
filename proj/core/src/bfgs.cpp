#include "adaptvqe/bfgs.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "adaptvqe/errors.hpp"

namespace adaptvqe {

namespace {

using Vec = Eigen::VectorXd;

struct Eval {
  double f;
  Vec g;
};

struct Tracker {
  const ObjectiveFn& fobj;
  const GradientFn& gobj;
  int n_f = 0, n_g = 0;

  double f(const Vec& x) {
    ++n_f;
    std::vector<double> xv(x.data(), x.data() + x.size());
    double v = fobj(xv);
    if (std::isnan(v)) throw OptimizerError("objective returned NaN");
    return v;
  }
  Vec g(const Vec& x) {
    ++n_g;
    std::vector<double> xv(x.data(), x.data() + x.size());
    std::vector<double> gv = gobj(xv);
    return Eigen::Map<Vec>(gv.data(), gv.size());
  }
};

// Strong-Wolfe line search (Nocedal & Wright Alg. 3.5/3.6).
struct LineResult {
  double alpha, f;
  Vec g;
  bool ok;
};

LineResult line_search(Tracker& t, const Vec& x, const Vec& d, double f0, const Vec& g0) {
  const double c1 = 1e-4, c2 = 0.9;
  const double dg0 = g0.dot(d);
  if (dg0 >= 0) return {0, f0, g0, false};

  auto phi = [&](double a) { return t.f(x + a * d); };
  auto dphi = [&](double a, Vec& gout) {
    gout = t.g(x + a * d);
    return gout.dot(d);
  };

  auto zoom = [&](double lo, double hi, double flo) -> LineResult {
    Vec g;
    for (int it = 0; it < 50; ++it) {
      double a = 0.5 * (lo + hi);
      double fa = phi(a);
      if (fa > f0 + c1 * a * dg0 || fa >= flo) {
        hi = a;
      } else {
        double da = dphi(a, g);
        if (std::abs(da) <= -c2 * dg0) return {a, fa, g, true};
        if (da * (hi - lo) >= 0) hi = lo;
        lo = a;
        flo = fa;
      }
      if (std::abs(hi - lo) < 1e-16) break;
    }
    double a = 0.5 * (lo + hi);
    double fa = phi(a);
    dphi(a, g);
    return {a, fa, g, fa < f0};
  };

  double a_prev = 0, f_prev = f0, a = 1.0;
  const double a_max = 1e3;
  Vec g;
  for (int it = 0; it < 30; ++it) {
    double fa = phi(a);
    if (fa > f0 + c1 * a * dg0 || (it > 0 && fa >= f_prev)) return zoom(a_prev, a, f_prev);
    double da = dphi(a, g);
    if (std::abs(da) <= -c2 * dg0) return {a, fa, g, true};
    if (da >= 0) return zoom(a, a_prev, fa);
    a_prev = a;
    f_prev = fa;
    a = std::min(2.0 * a, a_max);
    if (a >= a_max) break;
  }
  return {0, f0, g0, false};
}

}  // namespace

BfgsResult bfgs_minimize(const ObjectiveFn& fobj, const GradientFn& gobj, std::vector<double> x0,
                         const BfgsSettings& settings) {
  Tracker t{fobj, gobj};
  const int n = int(x0.size());
  BfgsResult res;
  if (n == 0) {
    res.f = t.f(Vec(0));
    res.converged = true;
    res.n_objective_evals = t.n_f;
    return res;
  }

  Vec x = Eigen::Map<Vec>(x0.data(), n);
  double f = t.f(x);
  Vec g = t.g(x);
  Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(n, n);

  for (int iter = 0; iter < settings.max_iter; ++iter) {
    if (g.lpNorm<Eigen::Infinity>() <= settings.grad_tol) {
      res.converged = true;
      break;
    }
    Vec d = -(h_inv * g);
    LineResult ls = line_search(t, x, d, f, g);
    if (!ls.ok || ls.alpha == 0) break;  // line-search failure terminates

    Vec s = ls.alpha * d;
    Vec x_new = x + s;
    Vec y = ls.g - g;
    double sy = s.dot(y);
    if (sy > 1e-14) {
      double rho = 1.0 / sy;
      Eigen::MatrixXd i = Eigen::MatrixXd::Identity(n, n);
      h_inv = (i - rho * s * y.transpose()) * h_inv * (i - rho * y * s.transpose()) +
              rho * s * s.transpose();
    }
    bool small_step = settings.rel_step_tol > 0 &&
                      s.norm() <= settings.rel_step_tol * std::max(1.0, x.norm());
    x = x_new;
    f = ls.f;
    g = ls.g;
    if (small_step) break;
  }
  if (g.lpNorm<Eigen::Infinity>() <= settings.grad_tol) res.converged = true;

  res.x.assign(x.data(), x.data() + n);
  res.f = f;
  res.n_objective_evals = t.n_f;
  res.n_gradient_evals = t.n_g;
  return res;
}

Minimize1dResult minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                                 int grid_points, double tol) {
  Minimize1dResult res;
  int n = std::max(grid_points, 3);
  double best_x = lo, best_f = std::numeric_limits<double>::infinity();
  double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) {
    double x = lo + i * step;
    double v = f(x);
    ++res.n_evals;
    if (v < best_f) {
      best_f = v;
      best_x = x;
    }
  }
  // golden-section refinement of the surrounding bracket
  double a = std::max(lo, best_x - step), b = std::min(hi, best_x + step);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  res.n_evals += 2;
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
    ++res.n_evals;
  }
  double xm = 0.5 * (a + b);
  double fm = f(xm);
  ++res.n_evals;
  if (best_f < fm) {
    res.x = best_x;
    res.f = best_f;
  } else {
    res.x = xm;
    res.f = fm;
  }
  return res;
}

}  // namespace adaptvqe
