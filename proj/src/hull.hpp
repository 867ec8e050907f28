#pragma once

#include <string>
#include <vector>

namespace sharpineq {

enum class HullStatus { Interior, Boundary, Outside };

const char* hull_status_name(HullStatus s);

struct HullCertificate {
  HullStatus status = HullStatus::Outside;
  // Barycentric coordinates maximizing the smallest coefficient.
  std::vector<double> lambda;
  double margin = 0.0;
  int affine_rank = 0;
  int dim = 0;
  double residual = 0.0;
  std::string note;
};

// Locates `point` relative to the convex hull of `vertices` (all in R^d).
HullCertificate hull_membership(const std::vector<double>& point,
                                const std::vector<std::vector<double>>& vertices,
                                double tol = 1e-10);

struct LpResult {
  enum Status { Optimal, Infeasible, Unbounded } status = Infeasible;
  std::vector<double> x;
  double objective = 0.0;
};

// max c.x subject to A x = b, x >= 0 (dense two-phase simplex, Bland's rule).
LpResult solve_lp(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                  const std::vector<double>& c, double tol = 1e-12);

}  // namespace sharpineq
