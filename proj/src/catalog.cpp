#include "catalog.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "quadrature.hpp"

namespace sharpineq {

namespace {

void check_orders(const std::vector<double>& k, const std::vector<std::vector<double>>& r_list,
                  int a) {
  if (a < 1 || a > kMaxDim) throw InvalidArgument("dimension must be in 1.." + std::to_string(kMaxDim));
  if (static_cast<int>(k.size()) != a) throw InvalidArgument("k must have one entry per coordinate");
  if (r_list.empty()) throw InvalidArgument("r_list must contain at least one order vector");
  for (const auto& r : r_list) {
    if (static_cast<int>(r.size()) != a)
      throw InvalidArgument("every order vector in r_list must have one entry per coordinate");
    for (double x : r)
      if (!std::isfinite(x)) throw InvalidArgument("orders must be finite");
  }
  for (double x : k)
    if (!std::isfinite(x)) throw InvalidArgument("orders must be finite");
}

std::vector<double> check_damping(const std::vector<double>& rho, int a) {
  if (rho.empty()) return std::vector<double>(a, 0.0);
  if (static_cast<int>(rho.size()) != a) throw InvalidArgument("damping must have one entry per coordinate");
  for (double x : rho)
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidArgument("damping rates must be finite and >= 0");
  return rho;
}

// c(n) = prod g_i^{2k_i} e^{-2 rho_i |n_i|}, b_j(n) = prod g_i^{2 r^j_i}.
struct PowerLaw {
  std::vector<double> k2;
  std::vector<std::vector<double>> r2;
  std::vector<double> rho;
  bool damped = false;

  PowerLaw(const std::vector<double>& k, const std::vector<std::vector<double>>& r_list,
           std::vector<double> damping)
      : rho(std::move(damping)) {
    for (double x : k) k2.push_back(2.0 * x);
    for (const auto& r : r_list) {
      std::vector<double> t;
      for (double x : r) t.push_back(2.0 * x);
      r2.push_back(t);
    }
    for (double x : rho) damped = damped || x > 0.0;
  }

  template <class G>
  void operator()(const Index& n, G&& g, double& c, double* b) const {
    const int a = n.dim;
    c = 1.0;
    for (int i = 0; i < a; ++i) c *= power_weight(g(n[i]), k2[i]);
    if (damped) {
      double e = 0.0;
      for (int i = 0; i < a; ++i) e += rho[i] * static_cast<double>(n[i] < 0 ? -n[i] : n[i]);
      c *= std::exp(-2.0 * e);
    }
    for (std::size_t j = 0; j < r2.size(); ++j) {
      double w = 1.0;
      for (int i = 0; i < a; ++i) w *= power_weight(g(n[i]), r2[j][i]);
      b[j] = w;
    }
  }
};

double abs_g(std::int64_t v) { return static_cast<double>(v < 0 ? -v : v); }

}  // namespace

SpectralModel build_torus(const TorusSpec& spec) {
  check_orders(spec.k, spec.r_list, spec.a);
  PowerLaw law(spec.k, spec.r_list, check_damping(spec.damping, spec.a));
  ModelTraits traits;
  traits.name = "torus";
  traits.reflection_symmetric = true;
  traits.orthogonal_images = true;
  if (spec.a == 1 && !law.damped) {
    traits.exp_c = law.k2[0];
    for (const auto& r : law.r2) traits.exp_b.push_back(r[0]);
  }
  const int m = static_cast<int>(spec.r_list.size()) - 1;
  return SpectralModel(IndexSet::nonzero_lattice(spec.a), m,
                       [law](const Index& n, double& c, double* b) { law(n, abs_g, c, b); },
                       traits);
}

CrossSpace CrossSpace::make(CrossFamily family, int b) {
  CrossSpace s;
  s.family = family;
  s.b = b;
  switch (family) {
    case CrossFamily::Sphere:
      if (b < 1) throw InvalidArgument("sphere dimension must be >= 1");
      s.d = b;
      break;
    case CrossFamily::RealProjective:
      if (b < 2) throw InvalidArgument("real projective space needs b >= 2");
      s.d = b;
      break;
    case CrossFamily::ComplexProjective:
      if (b < 1) throw InvalidArgument("complex projective space needs b >= 1");
      s.d = 2 * b;
      break;
    case CrossFamily::QuaternionProjective:
      if (b < 1) throw InvalidArgument("quaternionic projective space needs b >= 1");
      s.d = 4 * b;
      break;
    case CrossFamily::CayleyPlane:
      s.b = 2;
      s.d = 16;
      break;
  }
  s.alpha = (s.d - 2) / 2.0;
  switch (family) {
    case CrossFamily::Sphere: s.beta = s.alpha; break;
    case CrossFamily::RealProjective: s.beta = -0.5; break;
    case CrossFamily::ComplexProjective: s.beta = 0.0; break;
    case CrossFamily::QuaternionProjective: s.beta = 1.0; break;
    case CrossFamily::CayleyPlane: s.beta = 3.0; break;
  }
  return s;
}

double CrossSpace::eigenvalue(std::int64_t j) const {
  const double x = static_cast<double>(j), bb = b;
  switch (family) {
    case CrossFamily::Sphere: return x * (x + bb - 1.0);
    case CrossFamily::RealProjective: return 2.0 * x * (2.0 * x + bb - 1.0);
    case CrossFamily::ComplexProjective: return 4.0 * x * (x + bb);
    case CrossFamily::QuaternionProjective: return 4.0 * x * (x + 2.0 * bb + 1.0);
    case CrossFamily::CayleyPlane: return 4.0 * x * (x + 11.0);
  }
  return 0.0;
}

std::string CrossSpace::name() const {
  switch (family) {
    case CrossFamily::Sphere: return "S^" + std::to_string(b);
    case CrossFamily::RealProjective: return "RP^" + std::to_string(b);
    case CrossFamily::ComplexProjective: return "CP^" + std::to_string(b);
    case CrossFamily::QuaternionProjective: return "HP^" + std::to_string(b);
    case CrossFamily::CayleyPlane: return "CaP^2";
  }
  return "?";
}

double cross_multiplicity(const CrossSpace& s, std::int64_t j) {
  if (j < 0) throw DomainError("multiplicity index must be >= 0");
  if (j == 0) return 1.0;
  using boost::math::lgamma;
  const double x = static_cast<double>(j), a = s.alpha, be = s.beta;
  const double lg = std::log(2.0 * x + a + be + 1.0) + lgamma(be + 1.0) + lgamma(x + a + 1.0) +
                    lgamma(x + a + be + 1.0) - lgamma(a + be + 2.0) - lgamma(a + 1.0) -
                    lgamma(x + 1.0) - lgamma(x + be + 1.0);
  const double nu = std::exp(lg);
  // Eigenspace dimensions are integers; snap off the log-domain rounding.
  const double r = std::round(nu);
  if (nu < 9.0e15 && std::fabs(nu - r) <= 1e-9 * nu) return r;
  return nu;
}

SpectralModel build_cross(const CrossSpace& space, double k, const std::vector<double>& r_list,
                          std::vector<std::string>* warnings) {
  if (r_list.empty()) throw InvalidArgument("r_list must contain at least one order");
  if (!std::isfinite(k)) throw InvalidArgument("orders must be finite");
  for (double r : r_list)
    if (!std::isfinite(r)) throw InvalidArgument("orders must be finite");
  if (warnings)
    for (std::size_t i = 1; i < r_list.size(); ++i)
      if (!(r_list[i] > r_list[i - 1])) {
        warnings->push_back("r_list is not strictly increasing");
        break;
      }
  ModelTraits traits;
  traits.name = space.name();
  traits.orthogonal_images = true;
  traits.exp_c = space.d - 1.0 + 4.0 * k;
  for (double r : r_list) traits.exp_b.push_back(4.0 * r);
  const double k2 = 2.0 * k;
  std::vector<double> r2;
  for (double r : r_list) r2.push_back(2.0 * r);
  const int m = static_cast<int>(r_list.size()) - 1;
  return SpectralModel(IndexSet::positive_integers(1), m,
                       [space, k2, r2](const Index& n, double& c, double* b) {
                         const double g2 = space.eigenvalue(n[0]);
                         c = cross_multiplicity(space, n[0]) * power_weight(g2, k2);
                         for (std::size_t l = 0; l < r2.size(); ++l) b[l] = power_weight(g2, r2[l]);
                       },
                       traits);
}

double weyl_ratio(const CrossSpace& space, std::int64_t j) {
  if (j < 1) throw DomainError("Weyl ratio needs j >= 1");
  CompensatedSum count;
  for (std::int64_t i = 0; i <= j; ++i) count.add(cross_multiplicity(space, i));
  return std::sqrt(space.eigenvalue(j)) * std::pow(count.value(), -1.0 / space.d);
}

HullCertificate rd_hull(const RdModel& model) {
  check_orders(model.k, model.r_list, model.d);
  std::vector<double> p(model.d);
  for (int i = 0; i < model.d; ++i) p[i] = model.k[i] + 0.5;
  return hull_membership(p, model.r_list);
}

RdResult rd_integral(const RdModel& model, const WeightVector& h) {
  return rd_integral(model, h, rd_hull(model));
}

RdResult rd_integral(const RdModel& model, const WeightVector& h, const HullCertificate& hull) {
  check_orders(model.k, model.r_list, model.d);
  if (h.size() != model.r_list.size())
    throw InvalidArgument("weight vector length must match r_list");
  RdResult res;
  res.hull = hull;
  if (hull.status != HullStatus::Interior) {
    res.value = ExtendedSum::infinite();
    return res;
  }
  const int d = model.d;
  const std::size_t L = model.r_list.size();
  std::vector<double> logh(L), a(d);
  for (std::size_t l = 0; l < L; ++l) logh[l] = std::log(h[l]);
  for (int i = 0; i < d; ++i) a[i] = 2.0 * model.k[i] + 1.0;

  // Substituting t_i = e^{s_i} gives a log-concave integrand on R^d.
  std::vector<double> s(d, 0.0), e(L);
  auto log_integrand = [&]() {
    double num = 0.0, top = -kInf;
    for (int i = 0; i < d; ++i) num += a[i] * s[i];
    for (std::size_t l = 0; l < L; ++l) {
      double v = logh[l];
      for (int i = 0; i < d; ++i) v += 2.0 * model.r_list[l][i] * s[i];
      e[l] = v;
      top = std::max(top, v);
    }
    double acc = 0.0;
    for (std::size_t l = 0; l < L; ++l) acc += std::exp(e[l] - top);
    return num - top - std::log(acc);
  };
  long evals = 0;
  bool conv = true;
  double err_rel = 0.0;
  std::function<QuadResult(int)> axis = [&](int i) -> QuadResult {
    if (i == d - 1)
      return integrate_log_concave(
          [&, i](double x) {
            s[i] = x;
            return log_integrand();
          },
          model.rel);
    return integrate_log_concave(
        [&, i](double x) {
          s[i] = x;
          QuadResult inner = axis(i + 1);
          evals += inner.evaluations;
          conv = conv && inner.converged;
          if (inner.value > 0.0) err_rel = std::max(err_rel, inner.error / inner.value);
          return inner.value > 0.0 ? std::log(inner.value) : -kInf;
        },
        model.rel);
  };
  QuadResult q = axis(0);
  evals += q.evaluations;
  res.converged = conv && q.converged;
  res.evaluations = evals;
  const double scale = std::pow(std::numbers::pi, -d);
  res.value = ExtendedSum::finite(q.value * scale);
  res.error_estimate = (q.error + err_rel * q.value) * scale;
  return res;
}

SpectralModel build_gpower(const GPowerSpec& spec) {
  check_orders(spec.k, spec.r_list, spec.a);
  PowerLaw law(spec.k, spec.r_list, check_damping(spec.damping, spec.a));
  const int m = static_cast<int>(spec.r_list.size()) - 1;
  ModelTraits traits;
  traits.orthogonal_images = true;
  if (spec.g == GKind::Abs) {
    traits.name = "gpower";
    traits.reflection_symmetric = true;
    if (spec.a == 1 && !law.damped) {
      traits.exp_c = law.k2[0];
      for (const auto& r : law.r2) traits.exp_b.push_back(r[0]);
    }
    return SpectralModel(IndexSet::nonzero_lattice(spec.a), m,
                         [law](const Index& n, double& c, double* b) { law(n, abs_g, c, b); },
                         traits);
  }
  if (spec.a != 1) throw InvalidArgument("tabulated g is supported in one dimension only");
  if (spec.table.empty()) throw InvalidArgument("tabulated g needs at least one value");
  for (double x : spec.table)
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidArgument("g values must be finite and >= 0");
  traits.name = "gpower-table";
  std::vector<Index> idx;
  for (std::size_t i = 0; i < spec.table.size(); ++i) idx.emplace_back(static_cast<std::int64_t>(i + 1));
  std::vector<double> table = spec.table;
  return SpectralModel(IndexSet::explicit_list(std::move(idx)), m,
                       [law, table](const Index& n, double& c, double* b) {
                         law(n, [&](std::int64_t v) { return table[v - 1]; }, c, b);
                       },
                       traits);
}

}  // namespace sharpineq
