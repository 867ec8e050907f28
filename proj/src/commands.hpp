#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "model_spec.hpp"
#include "stechkin.hpp"

namespace sharpineq {

enum class RunStatus { Ok, Vacuous, NonConverged };

struct CommandOutput {
  std::string json;
  std::string csv;
  RunStatus status = RunStatus::Ok;
};

enum class ConstantMode { MeanSquared, Multiplicative };

// `weights` are h (mean-squared) or lambda (multiplicative); empty uses the model's.
// force_norm selects the norm functional regardless of the model document.
CommandOutput run_constant(const BuiltModel& m, ConstantMode mode, bool force_norm,
                           const std::vector<double>& weights, bool want_curve);

CommandOutput run_stechkin(const BuiltModel& m, const std::vector<double>& budgets,
                           BudgetConvention conv, std::int64_t lower_bound_L);

enum class VerifyKind { Taikov, HLP, Solyar };

struct VerifyOptions {
  std::int64_t trials = 10000;
  std::uint64_t seed = 1;
  double p = 2.0;
  double k = 1.0;
  int harmonic = 0;  // nonzero: evaluate the single harmonic e^{int} instead of a scan
  std::int64_t truncation = 16;
};

CommandOutput run_verify(const BuiltModel* m, VerifyKind kind, const VerifyOptions& opt);

std::string catalog_list_json();
std::string catalog_show_json(const std::string& name);

}  // namespace sharpineq
