#include "sharpineq/sharpineq.h"

#include <cstdlib>
#include <cstring>
#include <ios>
#include <new>
#include <string>

#include "commands.hpp"
#include "model_spec.hpp"

struct sharpineq_model {
  sharpineq::BuiltModel built;
};

namespace {

thread_local std::string g_last_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

int fail(int code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <class F>
int guarded(F&& f) {
  g_last_error.clear();
  try {
    return f();
  } catch (const sharpineq::ParseError& e) {
    return fail(SHARPINEQ_E_PARSE, e.what());
  } catch (const sharpineq::DomainError& e) {
    return fail(SHARPINEQ_E_DOMAIN, e.what());
  } catch (const std::ios_base::failure& e) {
    return fail(SHARPINEQ_E_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(SHARPINEQ_E_INVALID_ARG, e.what());
  } catch (const std::domain_error& e) {
    return fail(SHARPINEQ_E_DOMAIN, e.what());
  } catch (const std::exception& e) {
    return fail(SHARPINEQ_E_INTERNAL, e.what());
  } catch (...) {
    return fail(SHARPINEQ_E_INTERNAL, "unknown error");
  }
}

int emit(const sharpineq::CommandOutput& out, char** json, char** csv) {
  *json = dup(out.json);
  if (csv) *csv = out.csv.empty() ? nullptr : dup(out.csv);
  switch (out.status) {
    case sharpineq::RunStatus::Ok: return SHARPINEQ_OK;
    case sharpineq::RunStatus::Vacuous: return SHARPINEQ_VACUOUS;
    case sharpineq::RunStatus::NonConverged:
      g_last_error = "series did not converge within the truncation limit";
      return SHARPINEQ_E_NONCONVERGED;
  }
  return SHARPINEQ_E_INTERNAL;
}

}  // namespace

extern "C" {

const char* sharpineq_version(void) { return "0.3.0"; }

const char* sharpineq_status_string(int code) {
  switch (code) {
    case SHARPINEQ_OK: return "ok";
    case SHARPINEQ_VACUOUS: return "vacuous";
    case SHARPINEQ_E_PARSE: return "parse error";
    case SHARPINEQ_E_DOMAIN: return "domain error";
    case SHARPINEQ_E_NONCONVERGED: return "not converged";
    case SHARPINEQ_E_INVALID_ARG: return "invalid argument";
    case SHARPINEQ_E_IO: return "i/o error";
    case SHARPINEQ_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* sharpineq_last_error(void) { return g_last_error.c_str(); }

void sharpineq_string_free(char* s) { std::free(s); }

int sharpineq_model_parse(const char* text, const char* origin, sharpineq_model** out) {
  if (!text || !out) return fail(SHARPINEQ_E_INVALID_ARG, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto* m = new sharpineq_model{sharpineq::parse_model(text, origin ? origin : "<model>")};
    *out = m;
    return SHARPINEQ_OK;
  });
}

int sharpineq_model_load(const char* path, sharpineq_model** out) {
  if (!path || !out) return fail(SHARPINEQ_E_INVALID_ARG, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new sharpineq_model{sharpineq::load_model(path)};
    return SHARPINEQ_OK;
  });
}

void sharpineq_model_free(sharpineq_model* model) { delete model; }

int sharpineq_model_num_operators(const sharpineq_model* model, size_t* out) {
  if (!model || !out) return fail(SHARPINEQ_E_INVALID_ARG, "null argument");
  *out = model->built.num_b();
  return SHARPINEQ_OK;
}

int sharpineq_combined_weight(const sharpineq_model* model, const int64_t* index, int dim, const double* h,
                              size_t len, double* out) {
  if (!model || !index || !h || !out) return fail(SHARPINEQ_E_INVALID_ARG, "null argument");
  return guarded([&] {
    if (!model->built.model) throw sharpineq::DomainError("model has no discrete spectrum");
    if (dim < 1 || dim > sharpineq::kMaxDim) throw sharpineq::InvalidArgument("index dimension out of range");
    sharpineq::Index n = sharpineq::Index::from_vector(std::vector<std::int64_t>(index, index + dim));
    *out = sharpineq::combined_weight(*model->built.model, sharpineq::WeightVector(std::vector<double>(h, h + len)), n);
    return SHARPINEQ_OK;
  });
}

int sharpineq_run_constant(const sharpineq_model* model, int mode, int force_norm, const double* weights,
                           size_t len, int want_curve, char** json, char** csv) {
  if (!model || !json || (len && !weights)) return fail(SHARPINEQ_E_INVALID_ARG, "null argument");
  if (mode != SHARPINEQ_MEAN_SQUARED && mode != SHARPINEQ_MULTIPLICATIVE)
    return fail(SHARPINEQ_E_INVALID_ARG, "unknown constant mode");
  *json = nullptr;
  if (csv) *csv = nullptr;
  return guarded([&] {
    std::vector<double> w(weights, weights + len);
    auto m = mode == SHARPINEQ_MULTIPLICATIVE ? sharpineq::ConstantMode::Multiplicative
                                               : sharpineq::ConstantMode::MeanSquared;
    return emit(sharpineq::run_constant(model->built, m, force_norm != 0, w, want_curve != 0), json, csv);
  });
}

int sharpineq_run_stechkin(const sharpineq_model* model, const double* budgets, size_t n, int convention,
                           int64_t lower_bound_L, char** json, char** csv) {
  if (!model || !json || (n && !budgets)) return fail(SHARPINEQ_E_INVALID_ARG, "null argument");
  if (convention != SHARPINEQ_CONVENTION_AS_DISPLAYED && convention != SHARPINEQ_CONVENTION_SQRT)
    return fail(SHARPINEQ_E_INVALID_ARG, "unknown budget convention");
  *json = nullptr;
  if (csv) *csv = nullptr;
  return guarded([&] {
    auto conv = convention == SHARPINEQ_CONVENTION_SQRT ? sharpineq::BudgetConvention::Sqrt
                                                        : sharpineq::BudgetConvention::AsDisplayed;
    return emit(sharpineq::run_stechkin(model->built, std::vector<double>(budgets, budgets + n), conv, lower_bound_L),
                json, csv);
  });
}

int sharpineq_run_verify(const sharpineq_model* model, int kind, int64_t trials, uint64_t seed, double p,
                         double k, int harmonic, char** json) {
  if (!json) return fail(SHARPINEQ_E_INVALID_ARG, "null argument");
  if (kind < SHARPINEQ_VERIFY_TAIKOV || kind > SHARPINEQ_VERIFY_SOLYAR)
    return fail(SHARPINEQ_E_INVALID_ARG, "unknown verification kind");
  *json = nullptr;
  return guarded([&] {
    sharpineq::VerifyOptions opt;
    opt.trials = trials;
    opt.seed = seed;
    opt.p = p;
    opt.k = k;
    opt.harmonic = harmonic;
    const auto vk = kind == SHARPINEQ_VERIFY_TAIKOV ? sharpineq::VerifyKind::Taikov
                    : kind == SHARPINEQ_VERIFY_HLP  ? sharpineq::VerifyKind::HLP
                                                    : sharpineq::VerifyKind::Solyar;
    return emit(sharpineq::run_verify(model ? &model->built : nullptr, vk, opt), json, nullptr);
  });
}

int sharpineq_catalog_list(char** json) {
  if (!json) return fail(SHARPINEQ_E_INVALID_ARG, "null argument");
  return guarded([&] {
    *json = dup(sharpineq::catalog_list_json());
    return SHARPINEQ_OK;
  });
}

int sharpineq_catalog_show(const char* name, char** json) {
  if (!name || !json) return fail(SHARPINEQ_E_INVALID_ARG, "null argument");
  *json = nullptr;
  return guarded([&] {
    *json = dup(sharpineq::catalog_show_json(name));
    return SHARPINEQ_OK;
  });
}

}  // extern "C"
