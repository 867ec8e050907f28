#include "optimize.hpp"

#include <algorithm>
#include <numeric>

namespace sharpineq {

NelderMeadResult nelder_mead_max(const std::function<double(const std::vector<double>&)>& f,
                                 const std::vector<double>& x0, const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  NelderMeadResult res;
  auto clampv = [&](std::vector<double> x) {
    for (double& v : x) v = std::clamp(v, -opt.clamp, opt.clamp);
    return x;
  };
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    double v = f(x);
    return std::isnan(v) ? -kInf : v;
  };
  if (n == 0) {
    res.x = x0;
    res.f = eval(x0);
    res.converged = true;
    return res;
  }
  std::vector<std::vector<double>> pts(n + 1, clampv(x0));
  for (std::size_t i = 0; i < n; ++i) {
    pts[i + 1][i] += opt.step;
    if (pts[i + 1][i] > opt.clamp) pts[i + 1][i] = x0[i] - opt.step;
    pts[i + 1] = clampv(pts[i + 1]);
  }
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fv[i] = eval(pts[i]);
  std::vector<std::size_t> order(n + 1);
  auto affine = [&](const std::vector<double>& a, const std::vector<double>& b, double t) {
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = a[i] + t * (b[i] - a[i]);
    return clampv(r);
  };

  for (res.iterations = 0; res.iterations < opt.max_iter; ++res.iterations) {
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] > fv[b]; });
    const std::size_t best = order[0], worst = order[n], second = order[n - 1];
    double size = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k) size = std::max(size, std::fabs(pts[i][k] - pts[best][k]));
    const double spread = fv[best] - fv[worst];
    if (std::isfinite(fv[best]) &&
        ((spread <= opt.ftol * (1.0 + std::fabs(fv[best])) && size <= 1e-6) || size <= opt.xtol)) {
      res.converged = true;
      break;
    }
    std::vector<double> cen(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i)
      if (i != worst)
        for (std::size_t k = 0; k < n; ++k) cen[k] += pts[i][k] / n;
    std::vector<double> xr = affine(cen, pts[worst], -1.0);
    const double fr = eval(xr);
    if (fr > fv[best]) {
      std::vector<double> xe = affine(cen, pts[worst], -2.0);
      const double fe = eval(xe);
      if (fe > fr) {
        pts[worst] = xe;
        fv[worst] = fe;
      } else {
        pts[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr > fv[second]) {
      pts[worst] = xr;
      fv[worst] = fr;
      continue;
    }
    const bool outside = fr > fv[worst];
    std::vector<double> xc = outside ? affine(cen, xr, 0.5) : affine(cen, pts[worst], 0.5);
    const double fc = eval(xc);
    if ((outside && fc >= fr) || (!outside && fc > fv[worst])) {
      pts[worst] = xc;
      fv[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      pts[i] = affine(pts[best], pts[i], 0.5);
      fv[i] = eval(pts[i]);
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (fv[i] > fv[best]) best = i;
  res.x = pts[best];
  res.f = fv[best];
  return res;
}

namespace {

std::vector<double> softmax_h(const std::vector<double>& theta, double clamp) {
  std::vector<double> h(theta.size() + 1);
  h[0] = 0.0;
  for (std::size_t j = 0; j < theta.size(); ++j) h[j + 1] = std::clamp(theta[j], -clamp, clamp);
  const double top = *std::max_element(h.begin(), h.end());
  double s = 0.0;
  for (double& v : h) {
    v = std::exp(v - top);
    s += v;
  }
  for (double& v : h) v /= s;
  return h;
}

void compositions(int total, int parts, std::vector<int>& cur,
                  const std::function<void(const std::vector<int>&)>& f) {
  if (parts == 1) {
    cur.push_back(total);
    f(cur);
    cur.pop_back();
    return;
  }
  for (int i = 1; i <= total - (parts - 1); ++i) {
    cur.push_back(i);
    compositions(total - i, parts - 1, cur, f);
    cur.pop_back();
  }
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

SimplexMaxResult maximize_over_simplex(const HObjective& S, const std::vector<double>& lambda,
                                       const SimplexMaxOptions& opt) {
  SimplexMaxResult out;
  const std::size_t L = lambda.size();
  if (L == 0) throw InvalidArgument("exponent vector is empty");
  bool all_converged = true;
  bool saw_infinite = false;

  auto phi = [&](const std::vector<double>& h_raw) {
    double s = 0.0;
    for (double v : h_raw) s += v;
    std::vector<double> h(h_raw);
    for (double& v : h) v /= s;
    HEval e = S(h);
    ++out.evaluations;
    if (e.infinite) {
      saw_infinite = true;
      return kInf;
    }
    if (!e.converged) all_converged = false;
    if (!(e.S > 0.0)) return -kInf;
    double v = std::log(e.S);
    for (std::size_t j = 0; j < L; ++j) v += lambda[j] * std::log(h[j]);
    return v;
  };

  const std::vector<double> uniform(L, 1.0 / L);
  {
    HEval e = S(uniform);
    ++out.evaluations;
    if (e.infinite) {
      out.value = ExtendedSum::infinite();
      out.status = "infinite";
      out.argmax_h = uniform;
      return out;
    }
    if (e.S == 0.0) {
      out.value = ExtendedSum::finite(0.0);
      out.status = e.converged ? "ok" : "nonconverged";
      out.argmax_h = uniform;
      return out;
    }
  }
  if (L == 1) {
    HEval e = S({1.0});
    out.value = ExtendedSum::finite(e.S);
    out.argmax_h = {1.0};
    out.status = e.converged ? "ok" : "nonconverged";
    return out;
  }

  // Ray probe h(t) = (1, .., t^{±1}, .., 1).
  if (opt.probe) {
    const double base = phi(uniform);
    std::vector<std::pair<std::size_t, double>> rays;
    for (std::size_t j = (L == 2 ? 1 : 0); j < L; ++j) {
      rays.emplace_back(j, 1.0);
      rays.emplace_back(j, -1.0);
    }
    for (const auto& [j, sign] : rays) {
      std::vector<double> slopes;
      double prev = base;
      for (int e = 2; e <= opt.probe_max_log2; e += 2) {
        std::vector<double> h(L, 1.0);
        h[j] = std::exp2(sign * e);
        bool before = all_converged;
        all_converged = true;
        const double v = phi(h);
        const bool ok = all_converged;
        all_converged = before;
        if (saw_infinite) break;
        if (!ok || !std::isfinite(v)) break;
        if (v - base > std::log(opt.growth_limit)) {
          out.value = ExtendedSum::infinite();
          out.status = "unbounded";
          out.argmax_h = h;
          out.warnings.push_back("objective grows beyond the probe limit along a ray");
          return out;
        }
        slopes.push_back((v - prev) / (2.0 * std::log(2.0)));
        prev = v;
        const std::size_t k = slopes.size();
        if (k >= 5) {
          bool steady = true;
          for (std::size_t i = k - 4; i < k; ++i)
            steady = steady && slopes[i] >= 0.01 &&
                     std::fabs(slopes[i] - slopes[i - 1]) <= 0.02 * slopes[i - 1];
          if (steady) {
            out.value = ExtendedSum::infinite();
            out.status = "unbounded";
            out.argmax_h = h;
            out.warnings.push_back("objective shows steady power growth along a ray");
            return out;
          }
        }
      }
    }
    if (saw_infinite) {
      out.value = ExtendedSum::infinite();
      out.status = "infinite";
      return out;
    }
  }

  // Grid over the open simplex at resolution 1/grid.
  std::vector<std::pair<double, std::vector<double>>> top;
  if (opt.grid > static_cast<int>(L) && binomial(opt.grid - 1, static_cast<int>(L) - 1) <= opt.grid_point_cap) {
    out.grid_checked = true;
    double gbest = -kInf;
    std::vector<int> cur;
    compositions(opt.grid, static_cast<int>(L), cur, [&](const std::vector<int>& c) {
      std::vector<double> h(L);
      for (std::size_t j = 0; j < L; ++j) h[j] = double(c[j]) / opt.grid;
      const double v = phi(h);
      gbest = std::max(gbest, v);
      top.emplace_back(v, h);
      std::sort(top.begin(), top.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
      if (top.size() > 3) top.pop_back();
    });
    out.grid_best = std::exp(gbest);
  } else {
    out.warnings.push_back("grid certificate skipped (too many grid points)");
  }

  auto to_theta = [&](const std::vector<double>& h) {
    std::vector<double> th(L - 1);
    for (std::size_t j = 1; j < L; ++j) th[j - 1] = std::log(h[j] / h[0]);
    return th;
  };
  std::vector<std::vector<double>> starts;
  starts.push_back(to_theta(lambda));
  starts.push_back(std::vector<double>(L - 1, 0.0));
  for (const auto& t : top) starts.push_back(to_theta(t.second));
  for (int r = 0; static_cast<int>(starts.size()) < std::max(opt.restarts, 2); ++r) {
    std::vector<double> th(L - 1);
    for (std::size_t j = 0; j < L - 1; ++j) th[j] = 3.0 * std::sin(1.7 * (r + 1) * (j + 1) + 0.3 * r);
    starts.push_back(th);
  }
  if (static_cast<int>(starts.size()) > std::max(opt.restarts, 2)) starts.resize(std::max(opt.restarts, 2));

  NelderMeadOptions nm;
  nm.max_iter = opt.iter_per_dim * static_cast<int>(L);
  nm.clamp = opt.clamp;
  auto theta_obj = [&](const std::vector<double>& th) { return phi(softmax_h(th, opt.clamp)); };
  NelderMeadResult best;
  for (const auto& st : starts) {
    NelderMeadResult r = nelder_mead_max(theta_obj, st, nm);
    if (r.f > best.f) best = r;
  }
  NelderMeadOptions polish = nm;
  polish.step = 0.05;
  NelderMeadResult r = nelder_mead_max(theta_obj, best.x, polish);
  if (r.f > best.f) best = r;

  all_converged = true;
  const std::vector<double> hbest = softmax_h(best.x, opt.clamp);
  const double fbest = phi(hbest);
  if (saw_infinite) {
    out.value = ExtendedSum::infinite();
    out.status = "infinite";
    return out;
  }
  out.value = ExtendedSum::finite(std::exp(fbest));
  out.argmax_h = hbest;
  if (out.grid_checked)
    out.certificate_gap = std::max(0.0, (out.grid_best - out.value.value()) / out.value.value());
  bool at_clamp = false;
  for (double t : best.x) at_clamp = at_clamp || std::fabs(std::fabs(t) - opt.clamp) < 1e-6;
  if (!all_converged)
    out.status = "nonconverged";
  else if (at_clamp) {
    out.status = "boundary";
    out.warnings.push_back("maximizer sits at the edge of the search box; the supremum may not be attained");
  } else
    out.status = "ok";
  return out;
}

}  // namespace sharpineq
