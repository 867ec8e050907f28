#include "quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace sharpineq {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Rule {
  double kronrod, gauss;
};

Rule gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double k = fc * kWgk[7], g = fc * kWg[3];
  for (int i = 0; i < 7; ++i) {
    const double x = h * kXgk[i];
    const double s = f(c - x) + f(c + x);
    k += kWgk[i] * s;
    if (i % 2 == 1) g += kWg[i / 2] * s;
  }
  return {k * h, g * h};
}

}  // namespace

QuadResult gauss_kronrod(const std::function<double(double)>& f, double a, double b, double rel,
                         double abs_tol, int max_depth) {
  QuadResult out;
  struct Piece {
    double a, b;
    int depth;
  };
  std::vector<Piece> stack{{a, b, 0}};
  const double len = b - a;
  while (!stack.empty()) {
    Piece p = stack.back();
    stack.pop_back();
    Rule r = gk15(f, p.a, p.b);
    out.evaluations += 15;
    const double err = std::fabs(r.kronrod - r.gauss);
    const double local_abs = abs_tol * (p.b - p.a) / len;
    if (err <= std::max(rel * std::fabs(r.kronrod), local_abs) || p.depth >= max_depth) {
      if (p.depth >= max_depth && err > std::max(rel * std::fabs(r.kronrod), local_abs))
        out.converged = false;
      out.value += r.kronrod;
      out.error += err;
      continue;
    }
    const double m = 0.5 * (p.a + p.b);
    stack.push_back({m, p.b, p.depth + 1});
    stack.push_back({p.a, m, p.depth + 1});
  }
  return out;
}

QuadResult integrate_log_concave(const std::function<double(double)>& log_f, double rel) {
  QuadResult out;
  long evals = 0;
  auto g = [&](double s) {
    ++evals;
    return log_f(s);
  };

  // Bracket and locate the mode.
  double a = -1.0, b = 0.0, c = 1.0;
  double ga = g(a), gb = g(b), gc = g(c);
  double step = 1.0;
  for (int i = 0; i < 2000 && !(gb >= ga && gb >= gc); ++i) {
    if (gc > gb) {
      a = b; ga = gb;
      b = c; gb = gc;
      step *= 2.0;
      c = b + step; gc = g(c);
    } else {
      c = b; gc = gb;
      b = a; gb = ga;
      step *= 2.0;
      a = b - step; ga = g(a);
    }
  }
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = a, hi = c;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double g1 = g(x1), g2 = g(x2);
  for (int i = 0; i < 200 && hi - lo > 1e-9 * (1.0 + std::fabs(lo)); ++i) {
    if (g1 < g2) {
      lo = x1;
      x1 = x2; g1 = g2;
      x2 = lo + phi * (hi - lo); g2 = g(x2);
    } else {
      hi = x2;
      x2 = x1; g2 = g1;
      x1 = hi - phi * (hi - lo); g1 = g(x1);
    }
  }
  const double mode = g1 > g2 ? x1 : x2;
  const double gmax = std::max({g1, g2, gb});
  if (!std::isfinite(gmax)) {
    out.converged = false;
    out.value = std::isinf(gmax) && gmax > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    out.evaluations = evals;
    return out;
  }

  auto f = [&](double s) {
    ++evals;
    return std::exp(log_f(s) - gmax);
  };
  const double panel_rel = 0.1 * rel;
  double total = 0.0, err = 0.0;
  bool converged = true;
  for (int dir = -1; dir <= 1; dir += 2) {
    double x = mode, w = 1.0, prev = -1.0, gx = g(x) - gmax;
    bool done = false;
    for (int panel = 0; panel < 600; ++panel) {
      const double y = x + dir * w;
      QuadResult q = dir > 0 ? gauss_kronrod(f, x, y, panel_rel, panel_rel * total)
                             : gauss_kronrod(f, y, x, panel_rel, panel_rel * total);
      evals += q.evaluations;
      converged = converged && q.converged;
      total += q.value;
      err += q.error;
      const double gy = g(y) - gmax;
      const double slope = (gx - gy) / w;
      if (slope > 0.0) {
        const double bound = std::exp(gy) / slope;
        if (bound <= 0.05 * rel * total) {
          err += bound;
          done = true;
          break;
        }
      }
      if (prev > 0.0 && q.value > 0.25 * prev) w *= 2.0;
      prev = q.value;
      x = y;
      gx = gy;
    }
    if (!done) converged = false;
  }
  out.value = total * std::exp(gmax);
  out.error = err * std::exp(gmax);
  out.converged = converged;
  out.evaluations = evals;
  return out;
}

}  // namespace sharpineq
