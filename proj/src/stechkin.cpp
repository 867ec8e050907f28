#include "stechkin.hpp"

#include <algorithm>

namespace sharpineq {

const char* convention_name(BudgetConvention c) {
  return c == BudgetConvention::Sqrt ? "sqrt" : "as-displayed";
}

BudgetConvention parse_convention(const std::string& s) {
  if (s == "as-displayed") return BudgetConvention::AsDisplayed;
  if (s == "sqrt") return BudgetConvention::Sqrt;
  throw InvalidArgument("unknown budget convention '" + s + "' (expected as-displayed or sqrt)");
}

StechkinProblem::StechkinProblem(const SpectralModel& model, int split, WeightVector hC,
                                 WeightVector hD, TailPolicy tol)
    : model_(model), split_(split), hC_(std::move(hC)), hD_(std::move(hD)), tol_(tol) {
  const int nb = static_cast<int>(model.num_b());
  if (split < 1 || split >= nb)
    throw InvalidArgument("split must leave at least one C and one D operator (1 <= split <= m)");
  if (static_cast<int>(hC_.size()) != split || static_cast<int>(hD_.size()) != nb - split)
    throw InvalidArgument("weight vectors do not match the operator split");
  cache_ = std::make_unique<WeightCache>(model_);
}

void StechkinProblem::split_weights(const double* b, double& cp, double& d) const {
  cp = 0.0;
  d = 0.0;
  for (int j = 0; j < split_; ++j) cp += hC_[j] * b[j];
  for (std::size_t j = 0; j < hD_.size(); ++j) d += hD_[j] * b[split_ + j];
}

double StechkinProblem::tail_hint(bool numerator_d, bool with_d) const {
  if (!model_.has_exponents()) return kNaN;
  const auto& e = model_.traits().exp_b;
  std::vector<double> ec(e.begin(), e.begin() + split_), ed(e.begin() + split_, e.end());
  const double lc = leading_exponent(ec, hC_.values());
  const double ld = leading_exponent(ed, hD_.values());
  const double num = model_.traits().exp_c + (numerator_d ? ld : lc);
  const double den = 2.0 * (with_d ? std::max(lc, ld) : lc);
  return tail_exponent_1d(model_, num, den);
}

namespace {

TailPolicy hinted(const StechkinProblem& p, double q) {
  TailPolicy t = p.policy();
  if (std::isnan(t.tail_exponent)) t.tail_exponent = q;
  return t;
}

ExtendedSum sqrt_of(const ExtendedSum& s) {
  return s.is_infinite() ? s : ExtendedSum::finite(std::sqrt(s.value()));
}

}  // namespace

SeriesResult g_mu_norm_sq(const StechkinProblem& p, double mu) {
  if (!(mu >= 0.0)) throw InvalidArgument("mu must be >= 0");
  if (std::isinf(mu)) return n_star(p);
  return model_sum(p.cache(), [&p, mu](double c, const double* b) {
    double cp, d;
    p.split_weights(b, cp, d);
    const double den = cp + mu * d;
    return NumDen{c * cp, den * den};
  }, hinted(p, p.tail_hint(false, mu > 0.0)));
}

SeriesResult error_sum(const StechkinProblem& p, double mu) {
  if (!(mu >= 0.0)) throw InvalidArgument("mu must be >= 0");
  return model_sum(p.cache(), [&p, mu](double c, const double* b) {
    double cp, d;
    p.split_weights(b, cp, d);
    const double den = cp + mu * d;
    return NumDen{c * d, den * den};
  }, hinted(p, p.tail_hint(true, mu > 0.0)));
}

SeriesResult n_star(const StechkinProblem& p) {
  TailPolicy t = p.policy();
  return model_sum(p.cache(), [&p](double c, const double* b) {
    double cp, d;
    p.split_weights(b, cp, d);
    return (d == 0.0 && cp != 0.0) ? NumDen{c, cp} : NumDen{0.0, 1.0};
  }, t);
}

SeriesResult endpoint_sum(const StechkinProblem& p) {
  double q = kNaN;
  if (p.model().has_exponents()) {
    const auto& e = p.model().traits().exp_b;
    std::vector<double> ed(e.begin() + p.split(), e.end());
    q = tail_exponent_1d(p.model(), p.model().traits().exp_c, leading_exponent(ed, p.hD().values()));
  }
  return model_sum(p.cache(), [&p](double c, const double* b) {
    double cp, d;
    p.split_weights(b, cp, d);
    return d != 0.0 ? NumDen{c, d} : NumDen{0.0, 1.0};
  }, hinted(p, q));
}

StechkinSolution solve_budget(const StechkinProblem& p, double N, BudgetConvention conv) {
  if (!(N > 0.0) || !std::isfinite(N)) throw InvalidArgument("budget must be a positive real");
  StechkinSolution sol;
  sol.budget_N = N;
  sol.convention = conv;
  const double T = conv == BudgetConvention::Sqrt ? N * N : N;
  auto to_conv = [conv](double v) { return conv == BudgetConvention::Sqrt ? std::sqrt(v) : v; };

  SeriesResult ns = n_star(p);
  sol.converged = ns.converged();
  sol.n_star = ns.value.is_infinite() ? ns.value : ExtendedSum::finite(to_conv(ns.value.value()));
  if (ns.value.is_infinite() || T < ns.value.value()) {
    sol.mu = kInf;
    sol.error_E = ExtendedSum::infinite();
    sol.status = "below-n-star";
    return sol;
  }
  if (T == ns.value.value()) {
    SeriesResult e = endpoint_sum(p);
    sol.converged = sol.converged && e.converged();
    sol.mu = kInf;
    sol.g_at_mu = ns.value.value();
    sol.error_E = sqrt_of(e.value);
    sol.status = "endpoint";
    return sol;
  }

  bool conv_ok = true;
  auto G = [&](double mu) {
    SeriesResult r = g_mu_norm_sq(p, mu);
    conv_ok = conv_ok && r.converged();
    return r.value.value();
  };
  SeriesResult g0 = g_mu_norm_sq(p, 0.0);
  if (g0.value.is_finite() && g0.converged() && T >= g0.value.value()) {
    sol.mu = 0.0;
    sol.g_at_mu = g0.value.value();
    sol.error_E = ExtendedSum::finite(0.0);
    sol.status = T > g0.value.value() ? "clamped" : "ok";
    return sol;
  }

  double lo, hi;
  const double g1 = G(1.0);
  if (g1 == T) {
    lo = hi = 1.0;
  } else if (g1 > T) {
    lo = 1.0;
    hi = 2.0;
    int i = 0;
    while (G(hi) > T && i++ < 1100) {
      lo = hi;
      hi *= 2.0;
    }
  } else {
    hi = 1.0;
    lo = 0.5;
    int i = 0;
    while (G(lo) < T && i++ < 1100) {
      hi = lo;
      lo *= 0.5;
    }
  }
  for (int i = 0; i < 200 && lo < hi; ++i) {
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    if (!(mid > lo && mid < hi)) break;
    if (G(mid) > T)
      lo = mid;
    else
      hi = mid;
  }
  const double glo = G(lo), ghi = G(hi);
  sol.mu = std::fabs(glo - T) <= std::fabs(ghi - T) ? lo : hi;
  sol.g_at_mu = sol.mu == lo ? glo : ghi;

  SeriesResult es = error_sum(p, sol.mu);
  conv_ok = conv_ok && es.converged();
  sol.error_E = es.value.is_infinite() ? es.value
                                       : ExtendedSum::finite(sol.mu * std::sqrt(es.value.value()));
  sol.converged = sol.converged && conv_ok;
  sol.status = sol.converged ? "ok" : "nonconverged";
  return sol;
}

LowerBound stechkin_lower_bound(const StechkinProblem& p, const StechkinSolution& sol, std::int64_t L) {
  LowerBound lb;
  lb.L = L;
  if (sol.error_E.is_infinite()) {
    lb.status = "infinite-error";
    return lb;
  }
  if (std::isinf(sol.mu)) {
    lb.status = "endpoint";
    return lb;
  }
  const double mu = sol.mu;
  const double dual = sol.convention == BudgetConvention::AsDisplayed ? std::sqrt(sol.budget_N)
                                                                      : sol.budget_N;
  const SpectralModel& model = p.model();
  const IndexSet& set = model.index_set();
  const bool fold = model.traits().reflection_symmetric && set.kind() == IndexKind::NonzeroLattice;
  const double factor = fold ? std::pow(2.0, set.dim()) : 1.0;
  CompensatedSum P, GL, DL;
  std::vector<double> b(model.num_b());
  set.for_each_shell(0, L, fold, [&](const Index& n) {
    double c = 0.0, cp, d;
    model.weights(n, c, b.data());
    p.split_weights(b.data(), cp, d);
    const double den = cp + mu * d;
    if (den == 0.0) return;
    P.add(c / den);
    GL.add(c * cp / (den * den));
    DL.add(c * d / (den * den));
  });
  const double pv = P.value() * factor, gv = GL.value() * factor, dv = DL.value() * factor;
  if (dv == 0.0) {
    lb.status = "zero-denominator";
    return lb;
  }
  lb.defined = true;
  lb.status = "ok";
  lb.value = (pv - dual * std::sqrt(gv)) / std::sqrt(dv);
  return lb;
}

LowerBound stechkin_lower_bound(const StechkinProblem& p, double N, std::int64_t L,
                                BudgetConvention conv) {
  return stechkin_lower_bound(p, solve_budget(p, N, conv), L);
}

}  // namespace sharpineq
