#ifndef FRACEVO_FRACEVO_H
#define FRACEVO_FRACEVO_H

/*
 * C interface of the fracevo shared library.
 *
 * Every fallible call returns a fracevo_status. Calls that take a context
 * record a message for the last failure, readable with fracevo_last_error.
 * A context holds series and quadrature settings and must not be used from
 * two threads at once; context-free calls are reentrant.
 */

#include <stddef.h>

#if defined(_WIN32)
#if defined(FRACEVO_BUILDING_LIBRARY)
#define FRACEVO_API __declspec(dllexport)
#else
#define FRACEVO_API __declspec(dllimport)
#endif
#else
#define FRACEVO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fracevo_status {
  FRACEVO_OK = 0,
  FRACEVO_INVALID_ARGUMENT = 1,
  FRACEVO_NON_CONVERGENCE = 2,
  FRACEVO_TOLERANCE_NOT_MET = 3,
  FRACEVO_RANGE_EXCEEDED = 4,
  FRACEVO_DIVERGENT_STRIP = 5,
  FRACEVO_STRIP_VIOLATION = 6,
  FRACEVO_SINGULAR_ORIGIN = 7,
  FRACEVO_DIRAC_CASE = 8,
  FRACEVO_KINK_REFUSED = 9,
  FRACEVO_UNSUPPORTED = 10,
  FRACEVO_BUFFER_TOO_SMALL = 11,
  FRACEVO_INTERNAL_ERROR = 12
} fracevo_status;

typedef enum fracevo_scheme {
  FRACEVO_SCHEME_GAUSS_LEGENDRE_PANELS = 0,
  FRACEVO_SCHEME_ADAPTIVE_SIMPSON = 1
} fracevo_scheme;

typedef enum fracevo_method {
  FRACEVO_METHOD_CLOSED_FORM = 0,
  FRACEVO_METHOD_SERIES = 1,
  FRACEVO_METHOD_ASYMPTOTIC = 2,
  FRACEVO_METHOD_INTEGRAL = 3
} fracevo_method;

typedef struct fracevo_context fracevo_context;
typedef struct fracevo_kernel fracevo_kernel;

typedef struct fracevo_eval_result {
  double value;
  int terms_used;
  int converged;
  int method; /* fracevo_method */
} fracevo_eval_result;

typedef struct fracevo_subordination_result {
  double value;
  double density_mass_used;
  int warning_count;
} fracevo_subordination_result;

typedef struct fracevo_quadrature {
  int scheme; /* fracevo_scheme */
  int panels;
  int nodes_per_panel;
  double tail_cutoff;
  double abs_tol;
  int grading_levels;
} fracevo_quadrature;

/* u(t) supplied by the caller. Must be safe to call repeatedly. */
typedef double (*fracevo_time_fn)(double t, void* user_data);

FRACEVO_API const char* fracevo_version(void);
FRACEVO_API const char* fracevo_status_string(fracevo_status status);

/* ---- context ---- */

FRACEVO_API fracevo_status fracevo_context_create(fracevo_context** out);
FRACEVO_API void fracevo_context_destroy(fracevo_context* ctx);
FRACEVO_API const char* fracevo_last_error(const fracevo_context* ctx);
FRACEVO_API fracevo_status fracevo_set_series(fracevo_context* ctx, double rel_tol, int max_terms);
FRACEVO_API fracevo_status fracevo_get_series(const fracevo_context* ctx, double* rel_tol, int* max_terms);
FRACEVO_API fracevo_status fracevo_set_quadrature(fracevo_context* ctx, const fracevo_quadrature* spec);
FRACEVO_API fracevo_status fracevo_get_quadrature(const fracevo_context* ctx, fracevo_quadrature* spec);
/* Warnings attached to the last subordination result, index < warning_count. */
FRACEVO_API const char* fracevo_last_warning(const fracevo_context* ctx, int index);

/* ---- special functions ---- */

FRACEVO_API fracevo_status fracevo_reciprocal_gamma(double x, double* out);
FRACEVO_API fracevo_status fracevo_density_cutoff(double alpha, double* out);
FRACEVO_API fracevo_status fracevo_ml_generalized(fracevo_context* ctx, double alpha, double beta, double z,
                                                  fracevo_eval_result* out);
FRACEVO_API fracevo_status fracevo_ml_standard(fracevo_context* ctx, double alpha, double z, fracevo_eval_result* out);
FRACEVO_API fracevo_status fracevo_ml_density(fracevo_context* ctx, double alpha, double z, fracevo_eval_result* out);
FRACEVO_API fracevo_status fracevo_ml_density_generalized(fracevo_context* ctx, double alpha, double beta, double x,
                                                          fracevo_eval_result* out);

/* ---- transforms; t_max <= 0 means unbounded ---- */

FRACEVO_API fracevo_status fracevo_laplace(fracevo_context* ctx, fracevo_time_fn fn, void* user_data, double t_max,
                                           double p, double* out);
FRACEVO_API fracevo_status fracevo_mellin(fracevo_context* ctx, fracevo_time_fn fn, void* user_data, double s,
                                          double* out);
FRACEVO_API fracevo_status fracevo_riemann_liouville(fracevo_context* ctx, fracevo_time_fn fn, void* user_data,
                                                     double alpha, double t, double* out);

/* ---- subordination ---- */

FRACEVO_API fracevo_status fracevo_subordinate(fracevo_context* ctx, fracevo_time_fn fn, void* user_data,
                                               double t_max, double alpha, double t,
                                               fracevo_subordination_result* out);
/* Fills results[i] and statuses[i] for every i; returns the first failing
 * status, or FRACEVO_OK. Warnings are not retained for grid calls. */
FRACEVO_API fracevo_status fracevo_subordinate_grid(fracevo_context* ctx, fracevo_time_fn fn, void* user_data,
                                                    double t_max, double alpha, const double* t_grid, size_t count,
                                                    fracevo_subordination_result* results,
                                                    fracevo_status* statuses);

/* ---- diffusion ---- */

FRACEVO_API fracevo_status fracevo_heat_kernel(double r, double t, int n, double* out);
FRACEVO_API fracevo_status fracevo_kernel_create(fracevo_context* ctx, double alpha, fracevo_kernel** out);
FRACEVO_API void fracevo_kernel_destroy(fracevo_kernel* kernel);
FRACEVO_API fracevo_status fracevo_kernel_eval(fracevo_kernel* kernel, double r, double t, int n,
                                               fracevo_subordination_result* out);
FRACEVO_API const char* fracevo_kernel_last_error(const fracevo_kernel* kernel);
FRACEVO_API fracevo_status fracevo_frac_kernel_mellin_closed(double r, double s, int n, double alpha, double* out);
FRACEVO_API fracevo_status fracevo_mass_check(fracevo_context* ctx, double t, int n, double alpha, double* out);

/* ---- Black-Scholes ---- */

FRACEVO_API fracevo_status fracevo_to_transformed(double spot, double strike, double rate, double volatility,
                                                  double expiry, double t, double* tau, double* lambda0);
FRACEVO_API fracevo_status fracevo_payoff(double S, double E, double* out);
FRACEVO_API fracevo_status fracevo_bs_price(double S, double E, double tau, double lambda0, double* out);
FRACEVO_API fracevo_status fracevo_frac_bs_price(fracevo_context* ctx, double S, double E, double alpha, double tau,
                                                 double lambda0, fracevo_subordination_result* out);
FRACEVO_API fracevo_status fracevo_frac_bs_residual(fracevo_context* ctx, double S, double E, double alpha,
                                                    const double* tau_grid, size_t count, double lambda0,
                                                    double* max_residual);

/* ---- verification ----
 * fracevo_verify runs a suite and keeps its JSON report in the context;
 * *report_size receives the report length including the NUL terminator and
 * *passed is 1 when every check passed. alpha <= 0 runs the suite's default
 * orders. fracevo_copy_report copies the kept report into buffer, or returns
 * FRACEVO_BUFFER_TOO_SMALL without writing. */
FRACEVO_API fracevo_status fracevo_verify(fracevo_context* ctx, const char* suite, double alpha, int* passed,
                                          size_t* report_size);
FRACEVO_API fracevo_status fracevo_copy_report(const fracevo_context* ctx, char* buffer, size_t buffer_size);

#ifdef __cplusplus
}
#endif

#endif /* FRACEVO_FRACEVO_H */
