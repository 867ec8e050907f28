#include "multiplicative.hpp"

#include <numeric>

#include "mean_squared.hpp"

namespace sharpineq {

void check_exponents(const std::vector<double>& lambda) {
  if (lambda.empty()) throw InvalidArgument("exponent vector is empty");
  double s = 0.0;
  for (double l : lambda) {
    if (!(l > 0.0) || !std::isfinite(l)) throw InvalidArgument("exponents must be finite and > 0");
    s += l;
  }
  if (std::fabs(s - 1.0) > 1e-12) throw InvalidArgument("exponents must sum to 1");
}

namespace {

void check_lengths(const SpectralModel& model, const std::vector<double>& lambda) {
  check_exponents(lambda);
  if (lambda.size() != model.num_b())
    throw InvalidArgument("exponent vector has length " + std::to_string(lambda.size()) +
                          ", expected " + std::to_string(model.num_b()));
}

HEval from_series(const SeriesResult& r) {
  HEval e;
  e.infinite = r.value.is_infinite();
  e.S = r.value.value();
  e.converged = r.converged() || r.status == SeriesStatus::Infinite || r.status == SeriesStatus::Divergent;
  return e;
}

constexpr double kRdSearchRel = 1e-9;

MultResult finish(const SimplexMaxResult& s) {
  MultResult out;
  out.value = s.value;
  out.argmax_h = s.argmax_h;
  out.certificate_gap = s.certificate_gap;
  out.grid_checked = s.grid_checked;
  out.status = s.status;
  out.warnings = s.warnings;
  out.evaluations = s.evaluations;
  return out;
}

// Power-law analogue of the hull condition: (e_c + 1)/2 inside the hull of e_b/2.
bool exponent_hull_interior(const SpectralModel& model) {
  if (!model.has_exponents() || model.index_set().finite() || model.index_set().dim() != 1) return false;
  std::vector<std::vector<double>> verts;
  for (double e : model.traits().exp_b) verts.push_back({0.5 * e});
  return hull_membership({0.5 * (model.traits().exp_c + 1.0)}, verts).status == HullStatus::Interior;
}

void certify(const SpectralModel& model, const std::vector<double>& lambda, const TailPolicy& tol,
             MultResult& out) {
  SeriesResult fs = finiteness_series_check(model, lambda, tol);
  out.finiteness_certified = (fs.value.is_finite() && fs.converged()) || exponent_hull_interior(model);
  if (!out.finiteness_certified && out.value.is_finite())
    out.warnings.push_back("no finiteness certificate for this model and exponent vector");
}

}  // namespace

MultResult mult_taikov_constant(const SpectralModel& model, const std::vector<double>& lambda,
                                const MultOptions& opt) {
  check_lengths(model, lambda);
  WeightCache cache(model);
  auto S = [&](const std::vector<double>& h) {
    return from_series(taikov_constant(cache, WeightVector(h), opt.tol));
  };
  MultResult out = finish(maximize_over_simplex(S, lambda, opt.search));
  certify(model, lambda, opt.tol, out);
  return out;
}

MultResult mult_taikov_constant(const RdModel& model, const std::vector<double>& lambda,
                                const MultOptions& opt) {
  check_exponents(lambda);
  if (lambda.size() != model.r_list.size()) throw InvalidArgument("exponent vector must match r_list");
  HullCertificate hull = rd_hull(model);
  if (hull.status != HullStatus::Interior) {
    MultResult out;
    out.value = ExtendedSum::infinite();
    out.status = "hull-condition-fails";
    out.warnings.push_back("k + 1/2 is not interior to the hull of the orders; the integral diverges");
    return out;
  }
  // The search only has to resolve the maximizer; the value is recomputed at full accuracy.
  RdModel coarse = model;
  coarse.rel = std::max(model.rel, kRdSearchRel);
  auto S = [&](const std::vector<double>& h) {
    RdResult r = rd_integral(coarse, WeightVector(h), hull);
    HEval e;
    e.infinite = r.value.is_infinite();
    e.S = r.value.value();
    e.converged = r.converged;
    return e;
  };
  MultResult out = finish(maximize_over_simplex(S, lambda, opt.search));
  out.finiteness_certified = true;
  if (out.value.is_finite() && !out.argmax_h.empty() && coarse.rel > model.rel) {
    RdResult r = rd_integral(model, WeightVector(out.argmax_h), hull);
    double w = 1.0;
    for (std::size_t j = 0; j < lambda.size(); ++j) w *= std::pow(out.argmax_h[j], lambda[j]);
    out.value = ExtendedSum::finite(w * r.value.value());
    out.evaluations += 1;
    if (!r.converged) out.warnings.push_back("final quadrature did not converge");
  }
  return out;
}

MultResult mult_hlp_constant(const SpectralModel& model, const std::vector<double>& lambda,
                             const MultOptions& opt) {
  check_lengths(model, lambda);
  if (!model.traits().orthogonal_images)
    throw DomainError("the norm constant needs a model with pairwise orthogonal A-images");
  WeightCache cache(model);
  auto S = [&](const std::vector<double>& h) {
    return from_series(hlp_constant(cache, WeightVector(h), opt.tol));
  };
  MultResult out = finish(maximize_over_simplex(S, lambda, opt.search));
  out.finiteness_certified = out.value.is_finite() && out.status == "ok";
  return out;
}

ExtendedSum sharp_factor(const ExtendedSum& constant, const std::vector<double>& lambda) {
  check_exponents(lambda);
  if (constant.is_infinite()) return constant;
  double e = 0.0;
  for (double l : lambda) e -= l * std::log(l);
  return ExtendedSum::finite(std::sqrt(constant.value() * std::exp(e)));
}

SeriesResult finiteness_series_check(const SpectralModel& model, const std::vector<double>& lambda,
                                     const TailPolicy& tol) {
  check_lengths(model, lambda);
  TailPolicy t = tol;
  if (std::isnan(t.tail_exponent) && model.has_exponents()) {
    double e = 0.0;
    for (std::size_t j = 0; j < lambda.size(); ++j) e += lambda[j] * model.traits().exp_b[j];
    t.tail_exponent = tail_exponent_1d(model, model.traits().exp_c, e);
  }
  WeightCache cache(model);
  return model_sum(cache, [&lambda](double c, const double* b) {
    double den = 1.0;
    for (std::size_t j = 0; j < lambda.size(); ++j) den *= std::pow(b[j], lambda[j]);
    return NumDen{c, den};
  }, t);
}

double class_approx_error(double K, const std::vector<double>& lambda, const std::vector<double>& t) {
  check_exponents(lambda);
  if (!(K > 0.0) || !std::isfinite(K)) throw InvalidArgument("K must be a positive real");
  if (t.size() + 1 != lambda.size()) throw InvalidArgument("t must have one entry per exponent beyond the first");
  const double l0 = lambda[0];
  double v = std::log(l0) + std::log(K) / l0;
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (!(t[j] > 0.0)) throw InvalidArgument("class radii t_j must be > 0");
    if (std::isinf(t[j])) return 0.0;
    v += lambda[j + 1] / l0 * std::log(lambda[j + 1] / t[j]);
  }
  return std::exp(v);
}

double equality_ratio(const SpectralModel& model, const std::vector<double>& lambda, const Index& n) {
  check_lengths(model, lambda);
  std::vector<double> b(model.num_b());
  double c = 0.0;
  model.weights(n, c, b.data());
  if (c == 0.0) return kNaN;
  double v = 0.5 * std::log(c);
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (b[j] == 0.0) return kInf;
    v -= 0.5 * lambda[j] * std::log(b[j]);
  }
  return std::exp(v);
}

}  // namespace sharpineq
