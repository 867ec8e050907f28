#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sharpineq {

constexpr int kMaxDim = 6;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

struct Index {
  std::array<std::int64_t, kMaxDim> v{};
  int dim = 1;

  Index() = default;
  explicit Index(std::int64_t n) : dim(1) { v[0] = n; }
  Index(std::initializer_list<std::int64_t> xs);
  static Index from_vector(const std::vector<std::int64_t>& xs);

  std::int64_t operator[](int i) const { return v[i]; }
  std::int64_t& operator[](int i) { return v[i]; }
  std::int64_t max_abs() const;
  bool operator==(const Index& o) const;
  std::string str() const;
};

enum class IndexKind { PositiveIntegers, NonzeroLattice, Explicit };

// Countable index set with a nested truncation schedule M_1 ⊆ M_2 ⊆ ...
// For the lattice kinds M_N is the box {0 < |n_i| <= N}; for explicit lists
// M_N is the first N entries.
class IndexSet {
 public:
  static IndexSet positive_integers(int dim = 1);
  static IndexSet nonzero_lattice(int dim);
  static IndexSet explicit_list(std::vector<Index> indices);

  IndexKind kind() const { return kind_; }
  int dim() const { return dim_; }
  bool finite() const { return kind_ == IndexKind::Explicit; }
  std::size_t size() const { return list_.size(); }
  const std::vector<Index>& entries() const { return list_; }

  bool contains(const Index& n) const;

  // Radius N of truncation level L (doubling schedule).
  std::int64_t radius(int level) const;

  // Visits M_N \ M_{N_prev}. With fold set, a nonzero lattice is restricted
  // to its positive orthant.
  void for_each_shell(std::int64_t n_prev, std::int64_t n, bool fold,
                      const std::function<void(const Index&)>& f) const;
  Index shell_entry(std::int64_t n_prev, std::int64_t n, bool fold, std::size_t pos) const;
  std::vector<Index> truncation(std::int64_t n) const;

  std::string describe() const;

  static constexpr std::int64_t kBaseRadius = 8;

 private:
  IndexKind kind_ = IndexKind::PositiveIntegers;
  int dim_ = 1;
  std::vector<Index> list_;
};

class ExtendedSum {
 public:
  ExtendedSum() = default;
  static ExtendedSum finite(double v);
  static ExtendedSum infinite();

  bool is_infinite() const { return inf_; }
  bool is_finite() const { return !inf_; }
  double value() const { return inf_ ? kInf : v_; }

 private:
  double v_ = 0.0;
  bool inf_ = false;
};

class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<double> h);
  static WeightVector ones(std::size_t n) { return WeightVector(std::vector<double>(n, 1.0)); }

  std::size_t size() const { return h_.size(); }
  double operator[](std::size_t i) const { return h_[i]; }
  const std::vector<double>& values() const { return h_; }
  WeightVector scaled(double t) const;

 private:
  std::vector<double> h_;
};

struct ModelTraits {
  std::string name;
  // Weights depend on |n_i| only, so a lattice sum folds onto the positive orthant.
  bool reflection_symmetric = false;
  bool orthogonal_images = true;
  // Power-law exponents in the (one-dimensional) index: c(n) ~ n^exp_c,
  // b_j(n) ~ n^exp_b[j]. NaN / empty when unknown.
  double exp_c = kNaN;
  std::vector<double> exp_b;
};

using WeightFn = std::function<void(const Index& n, double& c, double* b)>;

class SpectralModel {
 public:
  SpectralModel(IndexSet set, int m, WeightFn fn, ModelTraits traits = {});

  const IndexSet& index_set() const { return set_; }
  int m() const { return m_; }
  std::size_t num_b() const { return static_cast<std::size_t>(m_) + 1; }
  const ModelTraits& traits() const { return traits_; }
  ModelTraits& traits() { return traits_; }
  bool has_exponents() const;

  void weights(const Index& n, double& c, double* b) const;
  double c(const Index& n) const;
  std::vector<double> b(const Index& n) const;

 private:
  void weights_unchecked(const Index& n, double& c, double* b) const;

  IndexSet set_;
  int m_;
  WeightFn fn_;
  ModelTraits traits_;
};

double combined_weight(const SpectralModel& model, const WeightVector& h, const Index& n);
void check_weight_vector(const SpectralModel& model, const WeightVector& h);

struct TailPolicy {
  double rel = 1e-10;
  int max_level = 20;
  // Decay exponent q of the remainder, S - S_N ~ N^{-q}. NaN: estimated from the blocks.
  double tail_exponent = kNaN;
  std::size_t max_terms = std::size_t(1) << 26;
};

enum class SeriesStatus { Exact, Converged, Infinite, Divergent, NonConverged };

const char* status_name(SeriesStatus s);

struct SeriesResult {
  ExtendedSum value;
  SeriesStatus status = SeriesStatus::NonConverged;
  int level = 0;
  std::int64_t truncation = 0;
  double partial = 0.0;
  double tail_estimate = 0.0;
  double error_estimate = 0.0;
  Index argmax;
  std::vector<std::pair<std::int64_t, double>> curve;

  bool converged() const {
    return status == SeriesStatus::Exact || status == SeriesStatus::Converged;
  }
};

struct ShellTotals {
  double sum = 0.0;
  double max = 0.0;
  std::size_t argmax_pos = 0;
  std::size_t count = 0;
  bool infinite = false;
};

using ShellFn = std::function<ShellTotals(std::int64_t n_prev, std::int64_t n)>;

SeriesResult sum_over_shells(const IndexSet& set, bool fold, const ShellFn& shell,
                             const TailPolicy& tol);
SeriesResult sup_over_shells(const IndexSet& set, bool fold, const ShellFn& shell,
                             const TailPolicy& tol);

using TermFn = std::function<double(const Index&)>;

SeriesResult tilde_sum(const TermFn& num, const TermFn& den, const IndexSet& set,
                       const TailPolicy& tol = {}, bool symmetric = false);
SeriesResult tilde_sup(const TermFn& num, const TermFn& den, const IndexSet& set,
                       const TailPolicy& tol = {}, bool symmetric = false);

struct NumDen {
  double num;
  double den;
};
using PairFn = std::function<NumDen(double c, const double* b)>;

// Materialized per-shell weights of a model, shared across many h.
class WeightCache {
 public:
  explicit WeightCache(const SpectralModel& model, std::size_t max_cached = std::size_t(1) << 21);

  const SpectralModel& model() const { return model_; }
  bool fold() const { return fold_; }
  double fold_factor() const { return fold_factor_; }

  // Visits shell weights (c, b) in enumeration order.
  void visit(std::int64_t n_prev, std::int64_t n,
             const std::function<void(double c, const double* b)>& f) const;

 private:
  struct Shell {
    std::int64_t n_prev, n;
    std::vector<double> data;
  };
  const SpectralModel& model_;
  bool fold_;
  double fold_factor_;
  std::size_t max_cached_;
  mutable std::mutex mu_;
  mutable std::vector<std::unique_ptr<Shell>> shells_;
  mutable std::size_t cached_terms_ = 0;
};

SeriesResult model_sum(const WeightCache& cache, const PairFn& f, const TailPolicy& tol);
SeriesResult model_sup(const WeightCache& cache, const PairFn& f, const TailPolicy& tol);

// Tail exponent for a 1-D model term n^{e_num - e_den}; NaN when unknown.
double tail_exponent_1d(const SpectralModel& model, double e_num, double e_den);
// Leading exponent of Σ h_j b_j restricted to the listed operators.
double leading_exponent(const std::vector<double>& exps, const std::vector<double>& h);

}  // namespace sharpineq
