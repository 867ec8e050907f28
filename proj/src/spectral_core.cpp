#include "spectral_core.hpp"

#include <algorithm>
#include <sstream>

namespace sharpineq {

Index::Index(std::initializer_list<std::int64_t> xs) {
  if (xs.size() == 0 || xs.size() > static_cast<std::size_t>(kMaxDim))
    throw InvalidArgument("index dimension out of range");
  dim = static_cast<int>(xs.size());
  int i = 0;
  for (auto x : xs) v[i++] = x;
}

Index Index::from_vector(const std::vector<std::int64_t>& xs) {
  if (xs.empty() || xs.size() > static_cast<std::size_t>(kMaxDim))
    throw InvalidArgument("index dimension out of range");
  Index n;
  n.dim = static_cast<int>(xs.size());
  for (int i = 0; i < n.dim; ++i) n.v[i] = xs[i];
  return n;
}

std::int64_t Index::max_abs() const {
  std::int64_t r = 0;
  for (int i = 0; i < dim; ++i) r = std::max(r, v[i] < 0 ? -v[i] : v[i]);
  return r;
}

bool Index::operator==(const Index& o) const {
  if (dim != o.dim) return false;
  for (int i = 0; i < dim; ++i)
    if (v[i] != o.v[i]) return false;
  return true;
}

std::string Index::str() const {
  if (dim == 1) return std::to_string(v[0]);
  std::string s = "(";
  for (int i = 0; i < dim; ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

IndexSet IndexSet::positive_integers(int dim) {
  if (dim < 1 || dim > kMaxDim) throw InvalidArgument("index dimension out of range");
  IndexSet s;
  s.kind_ = IndexKind::PositiveIntegers;
  s.dim_ = dim;
  return s;
}

IndexSet IndexSet::nonzero_lattice(int dim) {
  if (dim < 1 || dim > kMaxDim) throw InvalidArgument("index dimension out of range");
  IndexSet s;
  s.kind_ = IndexKind::NonzeroLattice;
  s.dim_ = dim;
  return s;
}

IndexSet IndexSet::explicit_list(std::vector<Index> indices) {
  IndexSet s;
  s.kind_ = IndexKind::Explicit;
  s.dim_ = indices.empty() ? 1 : indices.front().dim;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i].dim != s.dim_) throw InvalidArgument("explicit index list mixes dimensions");
    for (std::size_t j = 0; j < i; ++j)
      if (indices[j] == indices[i])
        throw InvalidArgument("explicit index list repeats " + indices[i].str());
  }
  s.list_ = std::move(indices);
  return s;
}

bool IndexSet::contains(const Index& n) const {
  if (n.dim != dim_) return false;
  switch (kind_) {
    case IndexKind::PositiveIntegers:
      for (int i = 0; i < dim_; ++i)
        if (n[i] < 1) return false;
      return true;
    case IndexKind::NonzeroLattice:
      for (int i = 0; i < dim_; ++i)
        if (n[i] == 0) return false;
      return true;
    case IndexKind::Explicit:
      return std::find(list_.begin(), list_.end(), n) != list_.end();
  }
  return false;
}

std::int64_t IndexSet::radius(int level) const {
  if (kind_ == IndexKind::Explicit) return static_cast<std::int64_t>(list_.size());
  return kBaseRadius << level;
}

namespace {

// Odometer over the magnitude box [1, n]^d restricted to max > n_prev.
template <class F>
void for_each_magnitude(int d, std::int64_t n_prev, std::int64_t n, F&& f) {
  if (n <= n_prev) return;
  Index idx;
  idx.dim = d;
  if (d == 1) {
    for (std::int64_t a = n_prev + 1; a <= n; ++a) {
      idx.v[0] = a;
      f(idx);
    }
    return;
  }
  for (int i = 0; i < d; ++i) idx.v[i] = 1;
  while (true) {
    if (idx.max_abs() > n_prev) f(idx);
    int i = d - 1;
    while (i >= 0 && idx.v[i] == n) {
      idx.v[i] = 1;
      --i;
    }
    if (i < 0) break;
    ++idx.v[i];
  }
}

}  // namespace

void IndexSet::for_each_shell(std::int64_t n_prev, std::int64_t n, bool fold,
                              const std::function<void(const Index&)>& f) const {
  switch (kind_) {
    case IndexKind::Explicit: {
      std::int64_t hi = std::min<std::int64_t>(n, static_cast<std::int64_t>(list_.size()));
      for (std::int64_t i = std::max<std::int64_t>(n_prev, 0); i < hi; ++i) f(list_[i]);
      return;
    }
    case IndexKind::PositiveIntegers:
      for_each_magnitude(dim_, n_prev, n, f);
      return;
    case IndexKind::NonzeroLattice:
      if (fold) {
        for_each_magnitude(dim_, n_prev, n, f);
        return;
      }
      for_each_magnitude(dim_, n_prev, n, [&](const Index& a) {
        Index s = a;
        for (unsigned mask = 0; mask < (1u << dim_); ++mask) {
          for (int i = 0; i < dim_; ++i) s.v[i] = (mask >> i & 1u) ? -a.v[i] : a.v[i];
          f(s);
        }
      });
      return;
  }
}

Index IndexSet::shell_entry(std::int64_t n_prev, std::int64_t n, bool fold, std::size_t pos) const {
  Index out;
  std::size_t k = 0;
  for_each_shell(n_prev, n, fold, [&](const Index& idx) {
    if (k++ == pos) out = idx;
  });
  return out;
}

std::vector<Index> IndexSet::truncation(std::int64_t n) const {
  std::vector<Index> out;
  for_each_shell(0, n, false, [&](const Index& idx) { out.push_back(idx); });
  return out;
}

std::string IndexSet::describe() const {
  switch (kind_) {
    case IndexKind::PositiveIntegers:
      return dim_ == 1 ? "N" : "N^" + std::to_string(dim_);
    case IndexKind::NonzeroLattice:
      return "Z^" + std::to_string(dim_) + "_*";
    case IndexKind::Explicit:
      return "explicit[" + std::to_string(list_.size()) + "]";
  }
  return "?";
}

ExtendedSum ExtendedSum::finite(double v) {
  if (std::isnan(v) || v < 0.0) throw DomainError("extended sum value must be a nonnegative real");
  if (std::isinf(v)) return infinite();
  ExtendedSum s;
  s.v_ = v;
  return s;
}

ExtendedSum ExtendedSum::infinite() {
  ExtendedSum s;
  s.inf_ = true;
  return s;
}

WeightVector::WeightVector(std::vector<double> h) : h_(std::move(h)) {
  for (double x : h_)
    if (!(x > 0.0) || !std::isfinite(x))
      throw InvalidArgument("weight vector components must be finite and > 0");
}

WeightVector WeightVector::scaled(double t) const {
  std::vector<double> g = h_;
  for (double& x : g) x *= t;
  return WeightVector(std::move(g));
}

SpectralModel::SpectralModel(IndexSet set, int m, WeightFn fn, ModelTraits traits)
    : set_(std::move(set)), m_(m), fn_(std::move(fn)), traits_(std::move(traits)) {
  if (m_ < 0) throw InvalidArgument("model needs at least one constraint operator");
  if (!fn_) throw InvalidArgument("model has no weight function");
  if (!traits_.exp_b.empty() && traits_.exp_b.size() != num_b())
    throw InvalidArgument("exponent hints do not match the operator count");
  if (set_.kind() == IndexKind::Explicit && set_.size() == 0)
    throw InvalidArgument("explicit index set is empty");
  // Probe the first shell (all of a finite set) so bad weights fail early.
  std::vector<double> b(num_b());
  double c = 0.0;
  set_.for_each_shell(0, set_.radius(0), false, [&](const Index& n) { weights(n, c, b.data()); });
}

bool SpectralModel::has_exponents() const {
  return !std::isnan(traits_.exp_c) && traits_.exp_b.size() == num_b();
}

void SpectralModel::weights_unchecked(const Index& n, double& c, double* b) const {
  fn_(n, c, b);
  if (!std::isfinite(c) || c < 0.0)
    throw DomainError("weight c at " + n.str() + " is negative or not finite");
  for (std::size_t j = 0; j < num_b(); ++j)
    if (!std::isfinite(b[j]) || b[j] < 0.0)
      throw DomainError("weight b_" + std::to_string(j) + " at " + n.str() +
                        " is negative or not finite");
}

void SpectralModel::weights(const Index& n, double& c, double* b) const {
  if (!set_.contains(n)) throw DomainError("index " + n.str() + " is not in " + set_.describe());
  weights_unchecked(n, c, b);
}

double SpectralModel::c(const Index& n) const {
  std::vector<double> b(num_b());
  double c = 0.0;
  weights(n, c, b.data());
  return c;
}

std::vector<double> SpectralModel::b(const Index& n) const {
  std::vector<double> b(num_b());
  double c = 0.0;
  weights(n, c, b.data());
  return b;
}

void check_weight_vector(const SpectralModel& model, const WeightVector& h) {
  if (h.size() != model.num_b())
    throw InvalidArgument("weight vector has length " + std::to_string(h.size()) + ", expected " +
                          std::to_string(model.num_b()));
}

double combined_weight(const SpectralModel& model, const WeightVector& h, const Index& n) {
  check_weight_vector(model, h);
  std::vector<double> b(model.num_b());
  double c = 0.0;
  model.weights(n, c, b.data());
  double s = 0.0;
  for (std::size_t j = 0; j < b.size(); ++j) s += h[j] * b[j];
  return s;
}

const char* status_name(SeriesStatus s) {
  switch (s) {
    case SeriesStatus::Exact: return "exact";
    case SeriesStatus::Converged: return "converged";
    case SeriesStatus::Infinite: return "infinite";
    case SeriesStatus::Divergent: return "divergent";
    case SeriesStatus::NonConverged: return "nonconverged";
  }
  return "?";
}

namespace {

constexpr int kRichardsonDepth = 4;
constexpr int kMinLevels = 3;

std::size_t shell_terms(const IndexSet& set, bool fold, std::int64_t n_prev, std::int64_t n) {
  if (set.finite()) return static_cast<std::size_t>(std::max<std::int64_t>(n - n_prev, 0));
  double a = std::pow(double(n), set.dim()) - std::pow(double(n_prev), set.dim());
  if (set.kind() == IndexKind::NonzeroLattice && !fold) a *= std::pow(2.0, set.dim());
  return a > 1e18 ? std::size_t(-1) : static_cast<std::size_t>(a);
}

double richardson(const std::vector<double>& partials, double q) {
  const int len = static_cast<int>(partials.size());
  const int depth = std::min(kRichardsonDepth, len - 1);
  std::vector<double> col(partials.end() - (depth + 1), partials.end());
  for (int j = 1; j <= depth; ++j) {
    double f = std::exp2(q + (j - 1)) - 1.0;
    for (int i = depth; i >= j; --i) col[i] = col[i] + (col[i] - col[i - 1]) / f;
  }
  return col[depth];
}

}  // namespace

SeriesResult sum_over_shells(const IndexSet& set, bool fold, const ShellFn& shell,
                             const TailPolicy& tol) {
  SeriesResult r;
  CompensatedSum acc;
  std::vector<double> partials, blocks;
  std::int64_t prev = 0;
  std::size_t terms = 0;
  int zero_run = 0, flat_run = 0, ok_run = 0;
  double prev_est = kNaN;
  const double hint = tol.tail_exponent;

  for (int level = 0; level <= tol.max_level; ++level) {
    const std::int64_t n = set.radius(level);
    std::size_t sz = shell_terms(set, fold, prev, n);
    if (!set.finite() && level > 0 && (sz > tol.max_terms || terms + sz > tol.max_terms)) break;
    terms += sz;
    ShellTotals t = shell(prev, n);
    r.level = level;
    r.truncation = n;
    if (t.infinite) {
      r.value = ExtendedSum::infinite();
      r.status = SeriesStatus::Infinite;
      r.partial = acc.value();
      return r;
    }
    acc.add(t.sum);
    const double S = acc.value();
    partials.push_back(S);
    blocks.push_back(t.sum);
    r.curve.emplace_back(n, S);
    r.partial = S;
    prev = n;

    if (set.finite()) {
      r.value = ExtendedSum::finite(S);
      r.status = SeriesStatus::Exact;
      return r;
    }

    zero_run = (t.sum == 0.0) ? zero_run + 1 : 0;
    if (zero_run >= 2) {
      r.value = ExtendedSum::finite(S);
      r.status = SeriesStatus::Converged;
      r.tail_estimate = 0.0;
      r.error_estimate = 0.0;
      return r;
    }

    double q = hint;
    if (std::isnan(hint) && level >= 1 && blocks[level - 1] > 0.0 && t.sum > 0.0)
      q = std::log2(blocks[level - 1] / t.sum);

    if (!std::isnan(hint)) {
      if (hint <= 1e-12 && t.sum > 0.0 && level >= 2) {
        r.value = ExtendedSum::infinite();
        r.status = SeriesStatus::Divergent;
        return r;
      }
    } else if (!std::isnan(q)) {
      flat_run = (q < 0.02) ? flat_run + 1 : 0;
      if (flat_run >= 3 && level >= 5) {
        r.value = ExtendedSum::infinite();
        r.status = SeriesStatus::Divergent;
        return r;
      }
    }

    double est = S;
    if (!std::isnan(q) && q > 0.0 && level >= 1) est = std::max(richardson(partials, q), S);
    double err = std::isnan(prev_est) ? kInf : std::fabs(est - prev_est);
    prev_est = est;
    r.value = ExtendedSum::finite(est);
    r.tail_estimate = est - S;
    r.error_estimate = err;
    ok_run = (err <= tol.rel * est) ? ok_run + 1 : 0;
    if (ok_run >= 2 && level >= kMinLevels) {
      r.status = SeriesStatus::Converged;
      return r;
    }
  }
  r.status = SeriesStatus::NonConverged;
  return r;
}

SeriesResult sup_over_shells(const IndexSet& set, bool fold, const ShellFn& shell,
                             const TailPolicy& tol) {
  SeriesResult r;
  double sup = 0.0, prev_max = kInf;
  std::int64_t prev = 0, arg_prev = -1, arg_n = 0;
  std::size_t arg_pos = 0, terms = 0;
  int dec_run = 0;
  auto finish = [&](SeriesStatus st) {
    r.status = st;
    r.value = ExtendedSum::finite(sup);
    r.partial = sup;
    if (arg_prev >= 0) r.argmax = set.shell_entry(arg_prev, arg_n, fold, arg_pos);
    return r;
  };
  for (int level = 0; level <= tol.max_level; ++level) {
    const std::int64_t n = set.radius(level);
    std::size_t sz = shell_terms(set, fold, prev, n);
    if (!set.finite() && level > 0 && (sz > tol.max_terms || terms + sz > tol.max_terms)) break;
    terms += sz;
    ShellTotals t = shell(prev, n);
    r.level = level;
    r.truncation = n;
    if (t.infinite) {
      r.value = ExtendedSum::infinite();
      r.status = SeriesStatus::Infinite;
      return r;
    }
    if (t.count > 0 && (t.max > sup || arg_prev < 0)) {
      sup = std::max(sup, t.max);
      arg_prev = prev;
      arg_n = n;
      arg_pos = t.argmax_pos;
    }
    r.curve.emplace_back(n, sup);
    prev = n;
    if (set.finite()) return finish(SeriesStatus::Exact);
    dec_run = ((t.max < sup || sup == 0.0) && t.max <= prev_max) ? dec_run + 1 : 0;
    prev_max = t.max;
    if (dec_run >= 2) return finish(SeriesStatus::Converged);
  }
  return finish(SeriesStatus::NonConverged);
}

namespace {

double fold_factor_for(const IndexSet& set, bool fold) {
  return (fold && set.kind() == IndexKind::NonzeroLattice) ? std::pow(2.0, set.dim()) : 1.0;
}

void check_term(double a, double b, const Index& n) {
  if (std::isnan(a) || a < 0.0 || std::isnan(b) || b < 0.0)
    throw DomainError("series term at " + n.str() + " is negative or NaN");
}

ShellFn generic_shell(const TermFn& num, const TermFn& den, const IndexSet& set, bool fold,
                      bool for_sup) {
  const double factor = for_sup ? 1.0 : fold_factor_for(set, fold);
  return [&num, &den, &set, fold, factor](std::int64_t n_prev, std::int64_t n) {
    ShellTotals t;
    CompensatedSum s;
    std::size_t pos = 0;
    set.for_each_shell(n_prev, n, fold, [&](const Index& idx) {
      double a = num(idx), b = den(idx);
      check_term(a, b, idx);
      if (b == 0.0) {
        if (a != 0.0) t.infinite = true;
      } else {
        double q = a / b;
        s.add(q);
        if (t.count == 0 || q > t.max) {
          t.max = q;
          t.argmax_pos = pos;
        }
        ++t.count;
      }
      ++pos;
    });
    t.sum = s.value() * factor;
    return t;
  };
}

}  // namespace

SeriesResult tilde_sum(const TermFn& num, const TermFn& den, const IndexSet& set,
                       const TailPolicy& tol, bool symmetric) {
  bool fold = symmetric && set.kind() == IndexKind::NonzeroLattice;
  return sum_over_shells(set, fold, generic_shell(num, den, set, fold, false), tol);
}

SeriesResult tilde_sup(const TermFn& num, const TermFn& den, const IndexSet& set,
                       const TailPolicy& tol, bool symmetric) {
  bool fold = symmetric && set.kind() == IndexKind::NonzeroLattice;
  return sup_over_shells(set, fold, generic_shell(num, den, set, fold, true), tol);
}

WeightCache::WeightCache(const SpectralModel& model, std::size_t max_cached)
    : model_(model),
      fold_(model.traits().reflection_symmetric &&
            model.index_set().kind() == IndexKind::NonzeroLattice),
      fold_factor_(fold_factor_for(model.index_set(), fold_)),
      max_cached_(max_cached) {}

void WeightCache::visit(std::int64_t n_prev, std::int64_t n,
                        const std::function<void(double, const double*)>& f) const {
  const std::size_t stride = model_.num_b() + 1;
  const Shell* hit = nullptr;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& s : shells_)
      if (s->n_prev == n_prev && s->n == n) hit = s.get();
  }
  if (hit) {
    const double* p = hit->data.data();
    for (std::size_t i = 0; i < hit->data.size(); i += stride) f(p[i], p + i + 1);
    return;
  }
  const IndexSet& set = model_.index_set();
  std::size_t sz = shell_terms(set, fold_, n_prev, n);
  bool store;
  {
    std::lock_guard<std::mutex> lock(mu_);
    store = cached_terms_ + sz <= max_cached_;
  }
  std::vector<double> row(stride);
  if (!store) {
    set.for_each_shell(n_prev, n, fold_, [&](const Index& idx) {
      model_.weights(idx, row[0], row.data() + 1);
      f(row[0], row.data() + 1);
    });
    return;
  }
  auto shell = std::make_unique<Shell>();
  shell->n_prev = n_prev;
  shell->n = n;
  shell->data.reserve(sz * stride);
  set.for_each_shell(n_prev, n, fold_, [&](const Index& idx) {
    model_.weights(idx, row[0], row.data() + 1);
    shell->data.insert(shell->data.end(), row.begin(), row.end());
  });
  const double* p = shell->data.data();
  for (std::size_t i = 0; i < shell->data.size(); i += stride) f(p[i], p + i + 1);
  std::lock_guard<std::mutex> lock(mu_);
  for (const auto& s : shells_)
    if (s->n_prev == n_prev && s->n == n) return;
  cached_terms_ += shell->data.size() / stride;
  shells_.push_back(std::move(shell));
}

namespace {

ShellFn cache_shell(const WeightCache& cache, const PairFn& f, bool for_sup) {
  const double factor = for_sup ? 1.0 : cache.fold_factor();
  return [&cache, &f, factor](std::int64_t n_prev, std::int64_t n) {
    ShellTotals t;
    CompensatedSum s;
    std::size_t pos = 0;
    cache.visit(n_prev, n, [&](double c, const double* b) {
      NumDen nd = f(c, b);
      if (std::isnan(nd.num) || nd.num < 0.0 || std::isnan(nd.den) || nd.den < 0.0)
        throw DomainError("series term is negative or NaN");
      if (nd.den == 0.0) {
        if (nd.num != 0.0) t.infinite = true;
      } else {
        double q = nd.num / nd.den;
        s.add(q);
        if (t.count == 0 || q > t.max) {
          t.max = q;
          t.argmax_pos = pos;
        }
        ++t.count;
      }
      ++pos;
    });
    t.sum = s.value() * factor;
    return t;
  };
}

}  // namespace

SeriesResult model_sum(const WeightCache& cache, const PairFn& f, const TailPolicy& tol) {
  return sum_over_shells(cache.model().index_set(), cache.fold(), cache_shell(cache, f, false), tol);
}

SeriesResult model_sup(const WeightCache& cache, const PairFn& f, const TailPolicy& tol) {
  return sup_over_shells(cache.model().index_set(), cache.fold(), cache_shell(cache, f, true), tol);
}

double tail_exponent_1d(const SpectralModel& model, double e_num, double e_den) {
  const IndexSet& set = model.index_set();
  if (set.finite() || set.dim() != 1 || std::isnan(e_num) || std::isnan(e_den)) return kNaN;
  return e_den - e_num - 1.0;
}

double leading_exponent(const std::vector<double>& exps, const std::vector<double>& h) {
  if (exps.empty()) return kNaN;
  double e = -kInf;
  for (std::size_t j = 0; j < exps.size() && j < h.size(); ++j)
    if (h[j] > 0.0) e = std::max(e, exps[j]);
  return std::isinf(e) ? kNaN : e;
}

}  // namespace sharpineq
