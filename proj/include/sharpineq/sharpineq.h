#ifndef SHARPINEQ_SHARPINEQ_H
#define SHARPINEQ_SHARPINEQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(SHARPINEQ_BUILDING)
#define SHARPINEQ_API __attribute__((visibility("default")))
#else
#define SHARPINEQ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Return codes. Non-negative codes carry a result. */
#define SHARPINEQ_OK 0
#define SHARPINEQ_VACUOUS 1 /* the computed constant or error is +inf */
#define SHARPINEQ_E_PARSE (-1)
#define SHARPINEQ_E_DOMAIN (-2)
#define SHARPINEQ_E_NONCONVERGED (-3) /* a result is still written */
#define SHARPINEQ_E_INVALID_ARG (-4)
#define SHARPINEQ_E_IO (-5)
#define SHARPINEQ_E_INTERNAL (-6)

#define SHARPINEQ_MEAN_SQUARED 0
#define SHARPINEQ_MULTIPLICATIVE 1

#define SHARPINEQ_CONVENTION_AS_DISPLAYED 0
#define SHARPINEQ_CONVENTION_SQRT 1

#define SHARPINEQ_VERIFY_TAIKOV 0
#define SHARPINEQ_VERIFY_HLP 1
#define SHARPINEQ_VERIFY_SOLYAR 2

typedef struct sharpineq_model sharpineq_model;

SHARPINEQ_API const char* sharpineq_version(void);
SHARPINEQ_API const char* sharpineq_status_string(int code);
/* Message of the last failing call on this thread ("" if none). */
SHARPINEQ_API const char* sharpineq_last_error(void);
SHARPINEQ_API void sharpineq_string_free(char* s);

/* `origin` labels diagnostics and may be NULL. */
SHARPINEQ_API int sharpineq_model_parse(const char* text, const char* origin, sharpineq_model** out);
/* A path of the form "catalog:NAME" loads a built-in preset. */
SHARPINEQ_API int sharpineq_model_load(const char* path, sharpineq_model** out);
SHARPINEQ_API void sharpineq_model_free(sharpineq_model* model);
SHARPINEQ_API int sharpineq_model_num_operators(const sharpineq_model* model, size_t* out);

/* sum_j h_j ||B_j e_n||^2 at the index n = (index[0], .., index[dim-1]). */
SHARPINEQ_API int sharpineq_combined_weight(const sharpineq_model* model, const int64_t* index, int dim,
                                            const double* h, size_t len, double* out);

/* weights: h for mean-squared, lambda for multiplicative; len 0 uses the model's.
   force_norm selects the norm functional. csv may be NULL; it receives the
   convergence curve when want_curve is set. Strings are freed with sharpineq_string_free. */
SHARPINEQ_API int sharpineq_run_constant(const sharpineq_model* model, int mode, int force_norm,
                                         const double* weights, size_t len, int want_curve, char** json,
                                         char** csv);

/* lower_bound_L > 0 also evaluates the lower bound over M_L for every budget. */
SHARPINEQ_API int sharpineq_run_stechkin(const sharpineq_model* model, const double* budgets, size_t n,
                                         int convention, int64_t lower_bound_L, char** json, char** csv);

/* model may be NULL (1-D torus preset). harmonic != 0 evaluates e^{int} instead of
   scanning (Solyar only). p = INFINITY is accepted. */
SHARPINEQ_API int sharpineq_run_verify(const sharpineq_model* model, int kind, int64_t trials, uint64_t seed,
                                       double p, double k, int harmonic, char** json);

SHARPINEQ_API int sharpineq_catalog_list(char** json);
SHARPINEQ_API int sharpineq_catalog_show(const char* name, char** json);

#ifdef __cplusplus
}
#endif

#endif
