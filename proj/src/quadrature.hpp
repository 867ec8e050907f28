#pragma once

#include <functional>

namespace sharpineq {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
  long evaluations = 0;
};

// Adaptive Gauss-Kronrod (7/15) on [a, b].
QuadResult gauss_kronrod(const std::function<double(double)>& f, double a, double b, double rel,
                         double abs_tol, int max_depth = 40);

// Integral over the real line of exp(log_f(s)) for concave log_f decaying
// in both directions. Panels march out from the mode; the remainder past the
// last panel is bounded through the tangent-line majorant of log_f.
QuadResult integrate_log_concave(const std::function<double(double)>& log_f, double rel);

}  // namespace sharpineq
