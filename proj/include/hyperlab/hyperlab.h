#ifndef HYPERLAB_HYPERLAB_H
#define HYPERLAB_HYPERLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(HYPERLAB_BUILDING_LIBRARY)
#define HYL_API __attribute__((visibility("default")))
#else
#define HYL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct hyl_context hyl_context;

typedef enum hyl_status {
  HYL_OK = 0,
  HYL_VERIFY_FAILED = 1,
  HYL_ERR_DIVERGENT_INPUT = 10,
  HYL_ERR_POLE_PARAMETER,
  HYL_ERR_NO_CONVERGENCE,
  HYL_ERR_ARITY_MISMATCH,
  HYL_ERR_DEGENERATE_MU,
  HYL_ERR_SINGULAR_PIVOT,
  HYL_ERR_SPECIALIZATION_MISMATCH,
  HYL_ERR_BLOCK_MISMATCH,
  HYL_ERR_NON_INTEGRAL_RESULT,
  HYL_ERR_NOT_UNIMODULAR,
  HYL_ERR_PRECONDITION_VIOLATED,
  HYL_ERR_SINGULAR_SAMPLE,
  HYL_ERR_INTEGRABILITY_VIOLATED,
  HYL_ERR_NON_INTEGRABLE_EXPONENT,
  HYL_ERR_BRANCH_COLLISION,
  HYL_ERR_DOMAIN_VIOLATED,
  HYL_ERR_INVALID_ARGUMENT,
  HYL_ERR_IO,
  HYL_ERR_INTERNAL
} hyl_status;

typedef enum hyl_table_format { HYL_FORMAT_JSON = 0, HYL_FORMAT_CSV = 1, HYL_FORMAT_SVG = 2 } hyl_table_format;

/* Context: seed, tolerance override, job count and the last result. */
HYL_API hyl_context* hyl_context_create(void);
HYL_API void hyl_context_destroy(hyl_context* ctx);
HYL_API hyl_status hyl_context_set_seed(hyl_context* ctx, uint64_t seed);
/* tol <= 0 restores the per-suite defaults. */
HYL_API hyl_status hyl_context_set_tolerance(hyl_context* ctx, double tol);
HYL_API hyl_status hyl_context_set_jobs(hyl_context* ctx, int jobs);

/* Owned by the context; valid until the next call on it. */
HYL_API const char* hyl_last_error(const hyl_context* ctx);
HYL_API const char* hyl_result(const hyl_context* ctx);

HYL_API const char* hyl_status_string(hyl_status status);
HYL_API const char* hyl_version(void);

/* series: "f", "f1", "f2", "fd3" or "fx3". params are "p/q", integers or
   decimals. point holds (re, im) pairs, one per variable. Result: JSON. */
HYL_API hyl_status hyl_eval_series(hyl_context* ctx, const char* series, const char* const* params,
                                   size_t nparams, const double* point, size_t nvars);

/* Runs a named suite ("all" for the default set). Result: JSON report;
   HYL_VERIFY_FAILED when any check fails. */
HYL_API hyl_status hyl_verify(hyl_context* ctx, const char* suite);

/* Intersection matrix and circuit matrices at the five exact parameters
   (a, b, b', c, c'). Result: JSON. */
HYL_API hyl_status hyl_monodromy(hyl_context* ctx, const char* const* params, size_t nparams);

/* Exact specialization at mu = omega^2 and the reduced 2x2 data. Result: JSON. */
HYL_API hyl_status hyl_special(hyl_context* ctx);

/* phi_k(s, t) with k in {1, 2}. Result: JSON. */
HYL_API hyl_status hyl_periods(hyl_context* ctx, int k, double s_re, double s_im, double t_re,
                               double t_im, int nodes);

/* S_1 over the given t values, as JSON, CSV or SVG. */
HYL_API hyl_status hyl_schwarz_sample(hyl_context* ctx, const double* t, size_t count,
                                      hyl_table_format format);

/* S_2(s, t) with the t^(-1/3) branch rotated by omega^branch. Result: JSON. */
HYL_API hyl_status hyl_schwarz_point(hyl_context* ctx, double s_re, double s_im, double t_re,
                                     double t_im, int branch);

/* Genus-2 cyclic covers with n <= max_n. Result: JSON. */
HYL_API hyl_status hyl_covers(hyl_context* ctx, int max_n);

#ifdef __cplusplus
}
#endif

#endif
