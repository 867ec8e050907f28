#pragma once

#include <cmath>
#include <vector>

#include "catalog.hpp"
#include "spectral_core.hpp"

namespace testutil {

inline double rel_err(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

// Explicit model with one index n = 1 and fixed weights.
inline sharpineq::SpectralModel single_index(double c, std::vector<double> b) {
  using namespace sharpineq;
  int m = static_cast<int>(b.size()) - 1;
  return SpectralModel(IndexSet::explicit_list({Index(1)}), m,
                       [c, b](const Index&, double& cc, double* bb) {
                         cc = c;
                         for (std::size_t j = 0; j < b.size(); ++j) bb[j] = b[j];
                       });
}

inline sharpineq::SpectralModel torus1(double k, std::vector<double> r,
                                       sharpineq::FunctionalKind f = sharpineq::FunctionalKind::Point) {
  sharpineq::TorusSpec s;
  s.a = 1;
  s.k = {k};
  for (double x : r) s.r_list.push_back({x});
  s.functional = f;
  return sharpineq::build_torus(s);
}

constexpr double kTorusTaikov = 2.1533480949371624;  // 2 Σ 1/(1+n²), oracle::torus_taikov
constexpr double kTwoZeta32 = 5.2247506973709763;    // 2 ζ(3/2), oracle::zeta

}  // namespace testutil
