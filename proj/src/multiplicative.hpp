#pragma once

#include <string>
#include <vector>

#include "catalog.hpp"
#include "optimize.hpp"
#include "spectral_core.hpp"

namespace sharpineq {

// Validates a strictly positive exponent vector summing to 1 (within 1e-12).
void check_exponents(const std::vector<double>& lambda);

struct MultOptions {
  TailPolicy tol;
  SimplexMaxOptions search;
};

struct MultResult {
  ExtendedSum value;
  std::vector<double> argmax_h;
  double certificate_gap = 0.0;
  bool grid_checked = false;
  std::string status;
  std::vector<std::string> warnings;
  long evaluations = 0;
  bool finiteness_certified = false;
};

MultResult mult_taikov_constant(const SpectralModel& model, const std::vector<double>& lambda,
                                const MultOptions& opt = {});
MultResult mult_taikov_constant(const RdModel& model, const std::vector<double>& lambda,
                                const MultOptions& opt = {});
MultResult mult_hlp_constant(const SpectralModel& model, const std::vector<double>& lambda,
                             const MultOptions& opt = {});

ExtendedSum sharp_factor(const ExtendedSum& constant, const std::vector<double>& lambda);

// ~sum c / prod b_j^{lambda_j}; finite implies the multiplicative constant is finite.
SeriesResult finiteness_series_check(const SpectralModel& model, const std::vector<double>& lambda,
                                     const TailPolicy& tol = {});

double class_approx_error(double K, const std::vector<double>& lambda, const std::vector<double>& t);

// ||A e_n|| / prod ||B_j e_n||^{lambda_j}; NaN when c(n) = 0.
double equality_ratio(const SpectralModel& model, const std::vector<double>& lambda, const Index& n);

}  // namespace sharpineq
