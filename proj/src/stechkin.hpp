#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "spectral_core.hpp"

namespace sharpineq {

enum class BudgetConvention { AsDisplayed, Sqrt };

const char* convention_name(BudgetConvention c);
BudgetConvention parse_convention(const std::string& s);

// Operators b_0..b_{split-1} form the C family (weights hC), the rest the D family (hD).
class StechkinProblem {
 public:
  StechkinProblem(const SpectralModel& model, int split, WeightVector hC, WeightVector hD,
                  TailPolicy tol = make_default_policy());

  const SpectralModel& model() const { return model_; }
  const WeightCache& cache() const { return *cache_; }
  int split() const { return split_; }
  const WeightVector& hC() const { return hC_; }
  const WeightVector& hD() const { return hD_; }
  const TailPolicy& policy() const { return tol_; }

  void split_weights(const double* b, double& cp, double& d) const;
  // Tail exponent of c·c_a/(c' + mu d)^2; e_a selects which weight sits in the numerator.
  double tail_hint(bool numerator_d, bool with_d) const;

  static TailPolicy make_default_policy() {
    TailPolicy t;
    t.rel = 1e-13;
    return t;
  }

 private:
  const SpectralModel& model_;
  std::unique_ptr<WeightCache> cache_;
  int split_;
  WeightVector hC_, hD_;
  TailPolicy tol_;
};

SeriesResult g_mu_norm_sq(const StechkinProblem& problem, double mu);
// ~sum c·d/(c' + mu d)^2, so that E = mu·sqrt(.).
SeriesResult error_sum(const StechkinProblem& problem, double mu);
SeriesResult n_star(const StechkinProblem& problem);
// ~sum over {d != 0} of c/d, the error at the mu = +inf endpoint (squared).
SeriesResult endpoint_sum(const StechkinProblem& problem);

struct StechkinSolution {
  double mu = 0.0;
  double budget_N = 0.0;
  ExtendedSum error_E;
  ExtendedSum n_star;
  double g_at_mu = 0.0;
  BudgetConvention convention = BudgetConvention::AsDisplayed;
  std::string status;
  bool converged = true;
};

StechkinSolution solve_budget(const StechkinProblem& problem, double N,
                              BudgetConvention conv = BudgetConvention::AsDisplayed);

struct LowerBound {
  double value = 0.0;
  bool defined = false;
  std::int64_t L = 0;
  std::string status;
};

LowerBound stechkin_lower_bound(const StechkinProblem& problem, const StechkinSolution& sol,
                                std::int64_t L);
LowerBound stechkin_lower_bound(const StechkinProblem& problem, double N, std::int64_t L,
                                BudgetConvention conv = BudgetConvention::AsDisplayed);

}  // namespace sharpineq
