#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hull.hpp"
#include "spectral_core.hpp"

namespace sharpineq {

enum class FunctionalKind { Point, Norm };

struct TorusSpec {
  int a = 1;
  std::vector<double> k;                    // length a
  std::vector<std::vector<double>> r_list;  // m+1 vectors of length a
  FunctionalKind functional = FunctionalKind::Point;
  std::vector<double> damping;              // rho per coordinate, empty = none
};

SpectralModel build_torus(const TorusSpec& spec);

enum class CrossFamily { Sphere, RealProjective, ComplexProjective, QuaternionProjective, CayleyPlane };

struct CrossSpace {
  CrossFamily family = CrossFamily::Sphere;
  int b = 2;
  int d = 2;
  double alpha = 0.0;
  double beta = 0.0;

  static CrossSpace make(CrossFamily family, int b);
  // gamma_j^2, the j-th distinct Laplace-Beltrami eigenvalue.
  double eigenvalue(std::int64_t j) const;
  std::string name() const;
};

double cross_multiplicity(const CrossSpace& space, std::int64_t j);
SpectralModel build_cross(const CrossSpace& space, double k, const std::vector<double>& r_list,
                          std::vector<std::string>* warnings = nullptr);
// gamma_j * N_j^{-1/d} with N_j = nu_0 + ... + nu_j the eigenvalue count.
double weyl_ratio(const CrossSpace& space, std::int64_t j);

struct RdModel {
  int d = 1;
  std::vector<double> k;
  std::vector<std::vector<double>> r_list;
  double rel = 1e-12;
};

struct RdResult {
  ExtendedSum value;
  bool converged = true;
  double error_estimate = 0.0;
  long evaluations = 0;
  HullCertificate hull;
};

HullCertificate rd_hull(const RdModel& model);
RdResult rd_integral(const RdModel& model, const WeightVector& h);
RdResult rd_integral(const RdModel& model, const WeightVector& h, const HullCertificate& hull);

enum class GKind { Abs, Table };

struct GPowerSpec {
  int a = 1;
  GKind g = GKind::Abs;
  std::vector<double> table;  // g(1), g(2), ... for GKind::Table (a = 1)
  std::vector<double> k;
  std::vector<std::vector<double>> r_list;
  std::vector<double> damping;
};

SpectralModel build_gpower(const GPowerSpec& spec);

// g^e with 0^0 = 1.
inline double power_weight(double g, double e) { return e == 0.0 ? 1.0 : std::pow(g, e); }

}  // namespace sharpineq
