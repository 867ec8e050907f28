#include "mean_squared.hpp"

#include <algorithm>
#include <numeric>

#include "parallel.hpp"

namespace sharpineq {

namespace {

TailPolicy with_hint(const SpectralModel& model, const WeightVector& h, TailPolicy tol) {
  if (std::isnan(tol.tail_exponent) && model.has_exponents())
    tol.tail_exponent =
        tail_exponent_1d(model, model.traits().exp_c, leading_exponent(model.traits().exp_b, h.values()));
  return tol;
}

PairFn ratio_terms(const WeightVector& h) {
  return [h](double c, const double* b) {
    double s = 0.0;
    for (std::size_t j = 0; j < h.size(); ++j) s += h[j] * b[j];
    return NumDen{c, s};
  };
}

}  // namespace

SeriesResult taikov_constant(const WeightCache& cache, const WeightVector& h, const TailPolicy& tol) {
  check_weight_vector(cache.model(), h);
  return model_sum(cache, ratio_terms(h), with_hint(cache.model(), h, tol));
}

SeriesResult taikov_constant(const SpectralModel& model, const WeightVector& h, const TailPolicy& tol) {
  WeightCache cache(model);
  return taikov_constant(cache, h, tol);
}

SeriesResult hlp_constant(const WeightCache& cache, const WeightVector& h, const TailPolicy& tol) {
  check_weight_vector(cache.model(), h);
  if (!cache.model().traits().orthogonal_images)
    throw DomainError("the norm constant needs a model with pairwise orthogonal A-images");
  return model_sup(cache, ratio_terms(h), tol);
}

SeriesResult hlp_constant(const SpectralModel& model, const WeightVector& h, const TailPolicy& tol) {
  WeightCache cache(model);
  return hlp_constant(cache, h, tol);
}

AdditiveCoeffs additive_taikov(const SpectralModel& modelC, const SpectralModel& modelD,
                               const WeightVector& h1, const WeightVector& h2,
                               const TailPolicy& tol) {
  check_weight_vector(modelC, h1);
  check_weight_vector(modelD, h2);
  const IndexSet& set = modelC.index_set();
  const IndexSet& setD = modelD.index_set();
  if (set.kind() != setD.kind() || set.dim() != setD.dim() ||
      (set.finite() && set.entries() != setD.entries()))
    throw InvalidArgument("the two models must share an index set");
  const std::size_t mc = modelC.num_b(), md = modelD.num_b();
  set.for_each_shell(0, set.radius(0), false, [&](const Index& n) {
    if (modelC.c(n) != modelD.c(n)) throw InvalidArgument("the two models must share c at " + n.str());
  });

  ModelTraits traits;
  traits.name = "additive";
  traits.reflection_symmetric =
      modelC.traits().reflection_symmetric && modelD.traits().reflection_symmetric;
  const SpectralModel merged(
      set, static_cast<int>(mc + md) - 1,
      [&modelC, &modelD, mc, md](const Index& n, double& c, double* b) {
        std::vector<double> bd(md);
        double cd = 0.0;
        modelC.weights(n, c, b);
        modelD.weights(n, cd, bd.data());
        std::copy(bd.begin(), bd.end(), b + mc);
      },
      traits);
  WeightCache cache(merged);

  auto split = [h1, h2, mc](const double* b, double& cp, double& d) {
    cp = 0.0;
    d = 0.0;
    for (std::size_t j = 0; j < h1.size(); ++j) cp += h1[j] * b[j];
    for (std::size_t j = 0; j < h2.size(); ++j) d += h2[j] * b[mc + j];
  };
  TailPolicy tc = tol, td = tol;
  if (std::isnan(tol.tail_exponent) && modelC.has_exponents() && modelD.has_exponents()) {
    const double ec = modelC.traits().exp_c;
    const double lc = leading_exponent(modelC.traits().exp_b, h1.values());
    const double ld = leading_exponent(modelD.traits().exp_b, h2.values());
    tc.tail_exponent = tail_exponent_1d(modelC, ec + lc, 2.0 * std::max(lc, ld));
    td.tail_exponent = tail_exponent_1d(modelC, ec + ld, 2.0 * std::max(lc, ld));
  }
  AdditiveCoeffs out;
  out.sum_C = model_sum(cache, [&](double c, const double* b) {
    double cp, d;
    split(b, cp, d);
    return NumDen{c * cp, (cp + d) * (cp + d)};
  }, tc);
  out.sum_D = model_sum(cache, [&](double c, const double* b) {
    double cp, d;
    split(b, cp, d);
    return NumDen{c * d, (cp + d) * (cp + d)};
  }, td);
  auto root = [](const SeriesResult& r) {
    return r.value.is_infinite() ? ExtendedSum::infinite() : ExtendedSum::finite(std::sqrt(r.value.value()));
  };
  out.coef_C = root(out.sum_C);
  out.coef_D = root(out.sum_D);
  return out;
}

ExtremalElement extremal_element(const SpectralModel& model, const WeightVector& h, std::int64_t N) {
  check_weight_vector(model, h);
  if (N < 0) throw InvalidArgument("truncation level must be >= 0");
  ExtremalElement x;
  x.N = N;
  std::vector<double> b(model.num_b());
  for (const Index& n : model.index_set().truncation(N)) {
    double c = 0.0;
    model.weights(n, c, b.data());
    double bh = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) bh += h[j] * b[j];
    if (bh == 0.0) continue;
    x.indices.push_back(n);
    x.coef.push_back(std::sqrt(c) / bh);
  }
  return x;
}

RatioResult element_ratio(const SpectralModel& model, const WeightVector& h, const ExtremalElement& x) {
  check_weight_vector(model, h);
  CompensatedSum p, q;
  std::vector<double> b(model.num_b());
  for (std::size_t i = 0; i < x.indices.size(); ++i) {
    double c = 0.0;
    model.weights(x.indices[i], c, b.data());
    double bh = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) bh += h[j] * b[j];
    p.add(std::sqrt(c) * x.coef[i]);
    q.add(bh * x.coef[i] * x.coef[i]);
  }
  RatioResult r;
  if (q.value() == 0.0) {
    r.status = "insufficient-truncation";
    return r;
  }
  r.defined = true;
  r.status = "ok";
  r.value = p.value() * p.value() / q.value();
  return r;
}

RatioResult sharpness_ratio(const SpectralModel& model, const WeightVector& h, std::int64_t N) {
  return element_ratio(model, h, extremal_element(model, h, N));
}

ScanResult random_violation_scan(const SpectralModel& model, const WeightVector& h,
                                 std::int64_t trials, std::uint64_t seed, ScanKind kind,
                                 std::int64_t N) {
  check_weight_vector(model, h);
  if (trials < 0) throw InvalidArgument("trial count must be >= 0");
  if (kind == ScanKind::HLP && !model.traits().orthogonal_images)
    throw DomainError("the norm scan needs a model with pairwise orthogonal A-images");
  ScanResult out;
  out.trials = trials;
  const std::vector<Index> support = model.index_set().truncation(N);
  out.truncation = N;
  const std::size_t M = support.size();
  if (trials == 0 || M == 0) return out;
  std::vector<double> rc(M), bh(M), cc(M), b(model.num_b());
  for (std::size_t i = 0; i < M; ++i) {
    model.weights(support[i], cc[i], b.data());
    rc[i] = std::sqrt(cc[i]);
    double s = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) s += h[j] * b[j];
    bh[i] = s;
  }

  struct Best {
    double ratio = -1.0;
    std::int64_t trial = -1;
    std::vector<std::size_t> pos;
    std::vector<std::complex<double>> x;
  };
  const unsigned chunks = thread_count();
  std::vector<Best> best(chunks);
  parallel_chunks(trials, chunks, [&](std::int64_t lo, std::int64_t hi, unsigned ci) {
    std::vector<std::size_t> perm(M);
    std::vector<std::complex<double>> x;
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    for (std::int64_t t = lo; t < hi; ++t) {
      auto eng = trial_engine(seed, static_cast<std::uint64_t>(t));
      std::uniform_int_distribution<std::size_t> size_dist(1, M);
      const std::size_t s = size_dist(eng);
      std::iota(perm.begin(), perm.end(), std::size_t(0));
      for (std::size_t i = 0; i < s; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, M - 1);
        std::swap(perm[i], perm[pick(eng)]);
      }
      x.resize(s);
      gauss.reset();
      for (std::size_t i = 0; i < s; ++i) {
        double re = gauss(eng);
        double im = gauss(eng);
        x[i] = {re, im};
      }
      std::complex<double> pf = 0.0;
      CompensatedSum num, den;
      for (std::size_t i = 0; i < s; ++i) {
        const std::size_t n = perm[i];
        const double a2 = std::norm(x[i]);
        den.add(bh[n] * a2);
        if (kind == ScanKind::Taikov)
          pf += rc[n] * x[i];
        else
          num.add(cc[n] * a2);
      }
      if (den.value() == 0.0) continue;
      const double ratio = (kind == ScanKind::Taikov ? std::norm(pf) : num.value()) / den.value();
      Best& bc = best[ci];
      if (ratio > bc.ratio) {
        bc.ratio = ratio;
        bc.trial = t;
        bc.pos.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(s));
        bc.x = x;
      }
    }
  });
  const Best* top = nullptr;
  for (const Best& bc : best)
    if (bc.trial >= 0 && (!top || bc.ratio > top->ratio)) top = &bc;
  if (top) {
    out.max_ratio = top->ratio;
    out.witness_trial = top->trial;
    for (std::size_t p : top->pos) out.witness_support.push_back(support[p]);
    out.witness = top->x;
  }
  return out;
}

}  // namespace sharpineq
