#include "commands.hpp"

#include <cmath>

#include "json.hpp"
#include "json_writer.hpp"
#include "mean_squared.hpp"
#include "multiplicative.hpp"
#include "solyar.hpp"

namespace sharpineq {

namespace {

constexpr const char* kVersionTag = "sharpineq 0.3.0";

JValue extended(const ExtendedSum& v) { return v.is_infinite() ? JValue("inf") : JValue(v.value()); }

JValue list(const std::vector<std::string>& xs) { return JValue::array_of(xs); }

std::string curve_csv(const SeriesResult& r) {
  std::string out = "N,partial_sum\n";
  for (const auto& [n, s] : r.curve) out += std::to_string(n) + "," + format_double(s) + "\n";
  return out;
}

JValue header(const char* command, const BuiltModel* m) {
  JValue j = JValue::object();
  j.set("tool", kVersionTag);
  j.set("command", command);
  if (m) {
    j.set("model", m->name);
    j.set("family", m->family);
  }
  return j;
}

RunStatus from_series(const SeriesResult& r) {
  if (r.value.is_infinite()) return RunStatus::Vacuous;
  return r.converged() ? RunStatus::Ok : RunStatus::NonConverged;
}

RunStatus from_label(const ExtendedSum& v, const std::string& status) {
  if (v.is_infinite()) return RunStatus::Vacuous;
  return status == "nonconverged" ? RunStatus::NonConverged : RunStatus::Ok;
}

WeightVector pick_h(const BuiltModel& m, const std::vector<double>& given) {
  if (!given.empty()) {
    if (given.size() != m.num_b())
      throw InvalidArgument("expected " + std::to_string(m.num_b()) + " weights h, got " + std::to_string(given.size()));
    return WeightVector(given);
  }
  if (!m.h.empty()) return WeightVector(m.h);
  return WeightVector::ones(m.num_b());
}

std::vector<double> pick_lambda(const BuiltModel& m, const std::vector<double>& given) {
  std::vector<double> l = given.empty() ? m.lambda : given;
  if (l.empty()) throw InvalidArgument("the multiplicative constant needs an exponent vector (lambda)");
  if (l.size() != m.num_b())
    throw InvalidArgument("expected " + std::to_string(m.num_b()) + " exponents, got " + std::to_string(l.size()));
  check_exponents(l);
  return l;
}

const SpectralModel& series_model(const BuiltModel& m) {
  if (!m.model) throw DomainError("family '" + m.family + "' has no discrete spectrum for this command");
  return *m.model;
}

CommandOutput mean_squared(const BuiltModel& m, bool norm, const std::vector<double>& weights, bool want_curve) {
  CommandOutput out;
  JValue j = header("constant", &m);
  j.set("mode", "mean-squared");
  j.set("functional", norm ? "norm" : "point");
  const WeightVector h = pick_h(m, weights);
  j.set("h", JValue::array_of(h.values()));
  if (m.rd) {
    if (norm) throw DomainError("the norm functional is not available on R^d");
    RdResult r = rd_integral(*m.rd, h);
    j.set("constant_sq", extended(r.value));
    j.set("constant", r.value.is_infinite() ? JValue("inf") : JValue(std::sqrt(r.value.value())));
    j.set("status", r.value.is_infinite() ? "infinite" : (r.converged ? "converged" : "nonconverged"));
    j.set("error_estimate", r.error_estimate);
    j.set("evaluations", r.evaluations);
    j.set("hull_status", hull_status_name(r.hull.status));
    out.status = r.value.is_infinite() ? RunStatus::Vacuous : (r.converged ? RunStatus::Ok : RunStatus::NonConverged);
  } else {
    const SpectralModel& model = series_model(m);
    SeriesResult r = norm ? hlp_constant(model, h, m.policy) : taikov_constant(model, h, m.policy);
    j.set("constant_sq", extended(r.value));
    j.set("constant", r.value.is_infinite() ? JValue("inf") : JValue(std::sqrt(r.value.value())));
    j.set("status", status_name(r.status));
    j.set("truncation_level", r.level);
    j.set("truncation", r.truncation);
    j.set("partial_sum", r.partial);
    j.set("tail_bound", r.error_estimate);
    if (norm && r.value.is_finite()) j.set("argmax", r.argmax.str());
    out.status = from_series(r);
    if (want_curve) out.csv = curve_csv(r);
  }
  j.set("warnings", list(m.warnings));
  out.json = j.dump();
  return out;
}

CommandOutput multiplicative(const BuiltModel& m, bool norm, const std::vector<double>& weights) {
  CommandOutput out;
  JValue j = header("constant", &m);
  j.set("mode", "multiplicative");
  j.set("functional", norm ? "norm" : "point");
  const std::vector<double> lambda = pick_lambda(m, weights);
  j.set("lambda", JValue::array_of(lambda));
  MultOptions opt;
  opt.tol = m.policy;
  MultResult r;
  if (m.rd) {
    if (norm) throw DomainError("the norm functional is not available on R^d");
    r = mult_taikov_constant(*m.rd, lambda, opt);
  } else {
    r = norm ? mult_hlp_constant(series_model(m), lambda, opt) : mult_taikov_constant(series_model(m), lambda, opt);
  }
  j.set("C", extended(r.value));
  j.set("sharp_factor", extended(sharp_factor(r.value, lambda)));
  j.set("argmax_h", JValue::array_of(r.argmax_h));
  j.set("certificate_gap", r.certificate_gap);
  j.set("grid_checked", r.grid_checked);
  j.set("finiteness_certified", r.finiteness_certified);
  j.set("status", r.status);
  j.set("evaluations", r.evaluations);
  std::vector<std::string> w = m.warnings;
  w.insert(w.end(), r.warnings.begin(), r.warnings.end());
  j.set("warnings", list(w));
  out.status = from_label(r.value, r.status);
  out.json = j.dump();
  return out;
}

}  // namespace

CommandOutput run_constant(const BuiltModel& m, ConstantMode mode, bool force_norm,
                           const std::vector<double>& weights, bool want_curve) {
  const bool norm = force_norm || m.functional == FunctionalKind::Norm;
  if (mode == ConstantMode::Multiplicative) return multiplicative(m, norm, weights);
  return mean_squared(m, norm, weights, want_curve);
}

CommandOutput run_stechkin(const BuiltModel& m, const std::vector<double>& budgets, BudgetConvention conv,
                           std::int64_t lower_bound_L) {
  if (budgets.empty()) throw InvalidArgument("at least one budget is required");
  const SpectralModel& model = series_model(m);
  const WeightVector h = pick_h(m, {});
  std::vector<double> hc(h.values().begin(), h.values().begin() + m.split);
  std::vector<double> hd(h.values().begin() + m.split, h.values().end());
  TailPolicy tol = StechkinProblem::make_default_policy();
  if (m.rel_given) tol.rel = m.policy.rel;
  tol.max_level = m.policy.max_level;
  StechkinProblem prob(model, m.split, WeightVector(hc), WeightVector(hd), tol);

  CommandOutput out;
  JValue j = header("stechkin", &m);
  j.set("convention", convention_name(conv));
  j.set("split", m.split);
  JValue rows = JValue::array();
  out.csv = "N,mu,E_N\n";
  bool any_inf = false, any_nc = false;
  ExtendedSum nstar;
  for (double N : budgets) {
    StechkinSolution s = solve_budget(prob, N, conv);
    nstar = s.n_star;
    JValue row = JValue::object();
    row.set("N", N);
    row.set("mu", s.mu);
    row.set("error", extended(s.error_E));
    row.set("g_at_mu", s.g_at_mu);
    row.set("status", s.status);
    if (lower_bound_L > 0 && s.error_E.is_finite() && std::isfinite(s.mu)) {
      LowerBound lb = stechkin_lower_bound(prob, s, lower_bound_L);
      row.set("lower_bound", lb.defined ? JValue(lb.value) : JValue(nullptr));
      row.set("lower_bound_L", lb.L);
    }
    any_inf = any_inf || s.error_E.is_infinite();
    any_nc = any_nc || !s.converged;
    rows.push(std::move(row));
    out.csv += format_double(N) + "," + format_double(s.mu) + "," +
               (s.error_E.is_infinite() ? std::string("inf") : format_double(s.error_E.value())) + "\n";
  }
  j.set("n_star", extended(nstar));
  j.set("rows", std::move(rows));
  j.set("status", any_nc ? "nonconverged" : (any_inf ? "infinite" : "ok"));
  j.set("warnings", list(m.warnings));
  out.status = any_nc ? RunStatus::NonConverged : (any_inf ? RunStatus::Vacuous : RunStatus::Ok);
  out.json = j.dump();
  return out;
}

namespace {

JValue coefficients(const TrigPolynomial& x) {
  JValue a = JValue::array();
  for (int n = -x.degree(); n <= x.degree(); ++n) {
    const auto c = x.coef(n);
    if (c != 0.0) a.push(JValue(JValue::Array{JValue(n), JValue(c.real()), JValue(c.imag())}));
  }
  return a;
}

CommandOutput verify_solyar(const VerifyOptions& opt) {
  CommandOutput out;
  JValue j = header("verify", nullptr);
  j.set("kind", "solyar");
  j.set("p", opt.p);
  j.set("q", conjugate_exponent(opt.p));
  j.set("k", opt.k);
  if (opt.harmonic != 0) {
    const TrigPolynomial x = TrigPolynomial::harmonic(opt.harmonic);
    SolyarResult r = solyar_ratio(x, opt.k, opt.p);
    j.set("harmonic", opt.harmonic);
    j.set("ratio", r.ratio);
    j.set("lhs", r.lhs);
    j.set("norm_p", r.norm_p);
    j.set("norm_q", r.norm_q);
    j.set("hypothesis_ok", r.hypothesis_ok);
    j.set("status", "ok");
    j.set("warnings", list(r.warnings));
  } else {
    SolyarScan s = solyar_random_scan(opt.p, opt.k, opt.trials, opt.seed);
    j.set("trials", s.trials);
    j.set("seed", opt.seed);
    j.set("max_ratio", s.max_ratio);
    j.set("violated", s.max_ratio > 1.0 + 1e-8);
    j.set("witness_trial", s.witness_trial);
    j.set("witness", coefficients(s.witness));
    j.set("hypothesis_ok", s.hypothesis_ok);
    j.set("status", "ok");
    std::vector<std::string> w;
    if (!s.hypothesis_ok) w.push_back("k is below (1/2)(1/2 - 1/p); the inequality is not asserted here");
    j.set("warnings", list(w));
  }
  out.json = j.dump();
  return out;
}

}  // namespace

CommandOutput run_verify(const BuiltModel* m, VerifyKind kind, const VerifyOptions& opt) {
  if (kind == VerifyKind::Solyar) return verify_solyar(opt);
  std::unique_ptr<BuiltModel> fallback;
  if (!m) {
    fallback = std::make_unique<BuiltModel>(parse_model(find_preset("torus-taikov")->json, "torus-taikov"));
    m = fallback.get();
  }
  const SpectralModel& model = series_model(*m);
  const WeightVector h = pick_h(*m, {});
  const bool norm = kind == VerifyKind::HLP;
  SeriesResult K = norm ? hlp_constant(model, h, m->policy) : taikov_constant(model, h, m->policy);
  ScanResult s = random_violation_scan(model, h, opt.trials, opt.seed, norm ? ScanKind::HLP : ScanKind::Taikov,
                                       opt.truncation);
  CommandOutput out;
  JValue j = header("verify", m);
  j.set("kind", norm ? "hlp" : "taikov");
  j.set("h", JValue::array_of(h.values()));
  j.set("constant_sq", extended(K.value));
  j.set("constant_status", status_name(K.status));
  j.set("trials", s.trials);
  j.set("seed", opt.seed);
  j.set("truncation", s.truncation);
  j.set("max_ratio", s.max_ratio);
  const double excess = K.value.is_finite() && K.value.value() > 0.0 ? (s.max_ratio - K.value.value()) / K.value.value()
                                                                     : -kInf;
  j.set("excess_rel", excess);
  j.set("violated", excess > 1e-10);
  j.set("witness_trial", s.witness_trial);
  JValue sup = JValue::array();
  for (const Index& n : s.witness_support) sup.push(n.str());
  j.set("witness_support", std::move(sup));
  JValue w = JValue::array();
  for (const auto& z : s.witness) w.push(JValue(JValue::Array{JValue(z.real()), JValue(z.imag())}));
  j.set("witness", std::move(w));
  j.set("status", K.value.is_infinite() ? "infinite" : (K.converged() ? "ok" : "nonconverged"));
  j.set("warnings", list(m->warnings));
  out.status = from_series(K);
  out.json = j.dump();
  return out;
}

std::string catalog_list_json() {
  JValue j = header("catalog", nullptr);
  JValue arr = JValue::array();
  for (const Preset& p : presets()) {
    JValue e = JValue::object();
    e.set("name", p.name);
    e.set("summary", p.summary);
    arr.push(std::move(e));
  }
  j.set("presets", std::move(arr));
  return j.dump();
}

std::string catalog_show_json(const std::string& name) {
  const Preset* p = find_preset(name);
  if (!p) throw InvalidArgument("no catalog entry named '" + name + "'");
  return nlohmann::ordered_json::parse(p->json).dump(2) + "\n";
}

}  // namespace sharpineq
