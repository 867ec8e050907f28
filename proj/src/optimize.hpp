#pragma once

#include <functional>
#include <string>
#include <vector>

#include "spectral_core.hpp"

namespace sharpineq {

struct NelderMeadOptions {
  int max_iter = 400;
  double step = 1.0;
  double ftol = 1e-15;
  double xtol = 1e-11;
  double clamp = kInf;
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = -kInf;
  int iterations = 0;
  long evaluations = 0;
  bool converged = false;
};

// Maximizes f; -inf marks infeasible points. Coordinates are clamped to [-clamp, clamp].
NelderMeadResult nelder_mead_max(const std::function<double(const std::vector<double>&)>& f,
                                 const std::vector<double>& x0, const NelderMeadOptions& opt);

struct HEval {
  double S = 0.0;
  bool infinite = false;
  bool converged = true;
};

using HObjective = std::function<HEval(const std::vector<double>& h)>;

struct SimplexMaxOptions {
  int restarts = 8;
  int iter_per_dim = 200;
  double clamp = 12.0;
  int grid = 64;
  bool probe = true;
  int probe_max_log2 = 40;
  double growth_limit = 1e12;
  std::size_t grid_point_cap = 50000;
};

struct SimplexMaxResult {
  ExtendedSum value;
  std::vector<double> argmax_h;
  double certificate_gap = 0.0;
  double grid_best = 0.0;
  bool grid_checked = false;
  std::string status;
  std::vector<std::string> warnings;
  long evaluations = 0;
};

// sup over h > 0 of prod h_j^{lambda_j} · S(h), using the scale invariance to restrict to the simplex.
SimplexMaxResult maximize_over_simplex(const HObjective& S, const std::vector<double>& lambda,
                                       const SimplexMaxOptions& opt = {});

}  // namespace sharpineq
