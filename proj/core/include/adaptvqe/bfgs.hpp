#pragma once

#include <functional>
#include <vector>

namespace adaptvqe {

struct BfgsSettings {
  double grad_tol = 1e-12;      // infinity-norm of the gradient
  double rel_step_tol = 0.0;    // 0 disables step-based termination
  int max_iter = 1000;
};

struct BfgsResult {
  std::vector<double> x;
  double f = 0.0;
  int n_objective_evals = 0;  // calls to the objective
  int n_gradient_evals = 0;   // calls to the gradient
  bool converged = false;     // gradient tolerance met
};

using ObjectiveFn = std::function<double(const std::vector<double>&)>;
using GradientFn = std::function<std::vector<double>(const std::vector<double>&)>;

BfgsResult bfgs_minimize(const ObjectiveFn& f, const GradientFn& g, std::vector<double> x0,
                         const BfgsSettings& settings = {});

// Scan `grid_points` samples of [lo, hi], then refine the best bracket by
// golden-section/parabolic steps down to `tol`.
struct Minimize1dResult {
  double x = 0.0;
  double f = 0.0;
  int n_evals = 0;
};
Minimize1dResult minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                                 int grid_points = 65, double tol = 1e-10);

}  // namespace adaptvqe
