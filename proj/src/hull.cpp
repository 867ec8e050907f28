#include "hull.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spectral_core.hpp"

namespace sharpineq {

const char* hull_status_name(HullStatus s) {
  switch (s) {
    case HullStatus::Interior: return "interior";
    case HullStatus::Boundary: return "boundary";
    case HullStatus::Outside: return "outside";
  }
  return "?";
}

namespace {

using Tableau = std::vector<std::vector<double>>;

void pivot(Tableau& T, std::vector<double>& z, std::vector<int>& basis, int r, int col) {
  const std::size_t w = T[r].size();
  const double p = T[r][col];
  for (std::size_t j = 0; j < w; ++j) T[r][j] /= p;
  for (std::size_t i = 0; i < T.size(); ++i) {
    if (static_cast<int>(i) == r) continue;
    const double f = T[i][col];
    if (f == 0.0) continue;
    for (std::size_t j = 0; j < w; ++j) T[i][j] -= f * T[r][j];
  }
  const double f = z[col];
  if (f != 0.0)
    for (std::size_t j = 0; j < w; ++j) z[j] -= f * T[r][j];
  basis[r] = col;
}

// Returns false when unbounded.
bool run_simplex(Tableau& T, std::vector<double>& z, std::vector<int>& basis, int ncols,
                 const std::vector<bool>& active, double tol) {
  const int rhs = static_cast<int>(z.size()) - 1;
  for (int iter = 0; iter < 10000; ++iter) {
    int col = -1;
    for (int j = 0; j < ncols; ++j)
      if (z[j] > tol) {
        col = j;
        break;
      }
    if (col < 0) return true;
    int row = -1;
    double best = 0.0;
    for (std::size_t i = 0; i < T.size(); ++i) {
      if (!active[i] || T[i][col] <= tol) continue;
      double ratio = T[i][rhs] / T[i][col];
      if (row < 0 || ratio < best - tol ||
          (std::fabs(ratio - best) <= tol && basis[i] < basis[row])) {
        row = static_cast<int>(i);
        best = ratio;
      }
    }
    if (row < 0) return false;
    pivot(T, z, basis, row, col);
  }
  return true;
}

}  // namespace

LpResult solve_lp(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                  const std::vector<double>& c, double tol) {
  const int m = static_cast<int>(A.size());
  const int n = static_cast<int>(c.size());
  const int w = n + m + 1;
  Tableau T(m, std::vector<double>(w, 0.0));
  std::vector<int> basis(m);
  std::vector<bool> active(m, true);
  std::vector<double> z(w, 0.0);
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(A[i].size()) != n) throw InvalidArgument("LP row size mismatch");
    const double s = b[i] < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < n; ++j) T[i][j] = s * A[i][j];
    T[i][n + i] = 1.0;
    T[i][w - 1] = s * b[i];
    basis[i] = n + i;
    for (int j = 0; j < n; ++j) z[j] += T[i][j];
    z[w - 1] += T[i][w - 1];
  }
  LpResult res;
  run_simplex(T, z, basis, n, active, tol);
  double scale = 1.0;
  for (double v : b) scale = std::max(scale, std::fabs(v));
  if (z[w - 1] > 1e3 * tol * scale) {
    res.status = LpResult::Infeasible;
    return res;
  }
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    int col = -1;
    for (int j = 0; j < n; ++j)
      if (std::fabs(T[i][j]) > tol) {
        col = j;
        break;
      }
    if (col >= 0)
      pivot(T, z, basis, i, col);
    else
      active[i] = false;
  }
  std::fill(z.begin(), z.end(), 0.0);
  for (int j = 0; j < n; ++j) z[j] = c[j];
  for (int i = 0; i < m; ++i) {
    if (!active[i]) continue;
    const double cb = c[basis[i]];
    if (cb == 0.0) continue;
    for (int j = 0; j < w; ++j) z[j] -= cb * T[i][j];
  }
  if (!run_simplex(T, z, basis, n, active, tol)) {
    res.status = LpResult::Unbounded;
    return res;
  }
  res.status = LpResult::Optimal;
  res.x.assign(n, 0.0);
  for (int i = 0; i < m; ++i)
    if (active[i] && basis[i] < n) res.x[basis[i]] = T[i][w - 1];
  for (int j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
  return res;
}

HullCertificate hull_membership(const std::vector<double>& point,
                                const std::vector<std::vector<double>>& vertices, double tol) {
  const int d = static_cast<int>(point.size());
  const int V = static_cast<int>(vertices.size());
  if (d == 0 || V == 0) throw InvalidArgument("hull test needs a point and at least one vertex");
  for (const auto& r : vertices)
    if (static_cast<int>(r.size()) != d) throw InvalidArgument("hull vertex dimension mismatch");

  HullCertificate cert;
  cert.dim = d;
  if (V > 1) {
    Eigen::MatrixXd D(d, V - 1);
    for (int j = 1; j < V; ++j)
      for (int i = 0; i < d; ++i) D(i, j - 1) = vertices[j][i] - vertices[0][i];
    Eigen::FullPivLU<Eigen::MatrixXd> lu(D);
    lu.setThreshold(1e-12);
    cert.affine_rank = static_cast<int>(lu.rank());
  }

  // Variables (t+, t-, mu_0..mu_{V-1}); lambda_j = t + mu_j, maximize t.
  const int n = V + 2;
  std::vector<std::vector<double>> A(d + 1, std::vector<double>(n, 0.0));
  std::vector<double> b(d + 1, 0.0), c(n, 0.0);
  c[0] = 1.0;
  c[1] = -1.0;
  A[0][0] = V;
  A[0][1] = -V;
  for (int j = 0; j < V; ++j) A[0][2 + j] = 1.0;
  b[0] = 1.0;
  for (int i = 0; i < d; ++i) {
    double s = 0.0;
    for (int j = 0; j < V; ++j) {
      s += vertices[j][i];
      A[i + 1][2 + j] = vertices[j][i];
    }
    A[i + 1][0] = s;
    A[i + 1][1] = -s;
    b[i + 1] = point[i];
  }
  LpResult lp = solve_lp(A, b, c);
  if (lp.status != LpResult::Optimal) {
    cert.status = HullStatus::Outside;
    cert.note = "point is not in the affine hull of the vertices";
    return cert;
  }
  const double t = lp.x[0] - lp.x[1];
  cert.margin = t;
  std::vector<double> lam(V);
  for (int j = 0; j < V; ++j) lam[j] = t + lp.x[2 + j];

  if (t < -tol) {
    cert.status = HullStatus::Outside;
    cert.note = "smallest barycentric coordinate is negative";
    return cert;
  }
  if (t <= tol) {
    cert.status = HullStatus::Boundary;
    double s = 0.0;
    for (double& x : lam) {
      x = std::max(x, 0.0);
      s += x;
    }
    for (double& x : lam) x /= s;
  } else if (cert.affine_rank < d) {
    cert.status = HullStatus::Boundary;
    cert.note = "hull is degenerate (affine rank " + std::to_string(cert.affine_rank) + " < " +
                std::to_string(d) + "); point lies in its relative interior";
  } else {
    cert.status = HullStatus::Interior;
  }
  cert.lambda = lam;
  double res = 0.0, total = 0.0;
  for (int j = 0; j < V; ++j) total += lam[j];
  res = std::fabs(total - 1.0);
  for (int i = 0; i < d; ++i) {
    double s = 0.0;
    for (int j = 0; j < V; ++j) s += lam[j] * vertices[j][i];
    res = std::max(res, std::fabs(s - point[i]));
  }
  cert.residual = res;
  return cert;
}

}  // namespace sharpineq
