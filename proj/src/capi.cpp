#include "fracevo/fracevo.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "fracevo/blackscholes.hpp"
#include "fracevo/diffusion.hpp"
#include "fracevo/error.hpp"
#include "fracevo/gamma.hpp"
#include "fracevo/mittag_leffler.hpp"
#include "fracevo/subordination.hpp"
#include "fracevo/transforms.hpp"
#include "fracevo/verify.hpp"

#ifndef FRACEVO_VERSION
#define FRACEVO_VERSION "0.0.0"
#endif

struct fracevo_context {
  fracevo::special::SeriesConfig series;
  fracevo::quad::QuadratureSpec quad;
  std::string last_error;
  std::vector<std::string> warnings;
  std::string report;
};

struct fracevo_kernel {
  std::unique_ptr<fracevo::diffusion::FractionalHeatKernel> kernel;
  std::string last_error;
};

namespace {

using fracevo::ErrorCode;

fracevo_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return FRACEVO_INVALID_ARGUMENT;
    case ErrorCode::NonConvergence: return FRACEVO_NON_CONVERGENCE;
    case ErrorCode::ToleranceNotMet: return FRACEVO_TOLERANCE_NOT_MET;
    case ErrorCode::RangeExceeded: return FRACEVO_RANGE_EXCEEDED;
    case ErrorCode::DivergentStrip: return FRACEVO_DIVERGENT_STRIP;
    case ErrorCode::StripViolation: return FRACEVO_STRIP_VIOLATION;
    case ErrorCode::SingularOrigin: return FRACEVO_SINGULAR_ORIGIN;
    case ErrorCode::DiracCase: return FRACEVO_DIRAC_CASE;
    case ErrorCode::KinkRefused: return FRACEVO_KINK_REFUSED;
    case ErrorCode::Unsupported: return FRACEVO_UNSUPPORTED;
  }
  return FRACEVO_INTERNAL_ERROR;
}

// Runs `body`, translating exceptions into a status and, when a sink is
// given, a message.
template <class Body>
fracevo_status guarded(std::string* sink, Body&& body) {
  try {
    body();
    if (sink) sink->clear();
    return FRACEVO_OK;
  } catch (const fracevo::Error& e) {
    if (sink) *sink = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    if (sink) *sink = "out of memory";
    return FRACEVO_INTERNAL_ERROR;
  } catch (const std::exception& e) {
    if (sink) *sink = e.what();
    return FRACEVO_INTERNAL_ERROR;
  } catch (...) {
    if (sink) *sink = "unknown failure";
    return FRACEVO_INTERNAL_ERROR;
  }
}

template <class Body>
fracevo_status with_context(fracevo_context* ctx, Body&& body) {
  if (ctx == nullptr) return FRACEVO_INVALID_ARGUMENT;
  return guarded(&ctx->last_error, std::forward<Body>(body));
}

template <class Body>
fracevo_status context_free(Body&& body) {
  return guarded(nullptr, std::forward<Body>(body));
}

void require_out(const void* p) { fracevo::require(p != nullptr, "output pointer is null"); }

fracevo::transforms::TimeFunction wrap(fracevo_time_fn fn, void* user_data, double t_max) {
  fracevo::require(fn != nullptr, "time function pointer is null");
  return {[fn, user_data](double t) { return fn(t, user_data); }, "c callback",
          t_max > 0.0 ? t_max : std::numeric_limits<double>::infinity()};
}

void fill(fracevo_eval_result* out, const fracevo::special::EvalResult& r) {
  out->value = r.value;
  out->terms_used = r.terms_used;
  out->converged = r.converged ? 1 : 0;
  out->method = static_cast<int>(r.method);
}

void fill(fracevo_subordination_result* out, const fracevo::subordination::SubordinationResult& r) {
  out->value = r.value;
  out->density_mass_used = r.density_mass_used;
  out->warning_count = static_cast<int>(r.warnings.size());
}

fracevo::quad::QuadratureSpec from_c(const fracevo_quadrature& c) {
  fracevo::require(c.scheme == FRACEVO_SCHEME_GAUSS_LEGENDRE_PANELS || c.scheme == FRACEVO_SCHEME_ADAPTIVE_SIMPSON,
                   "unknown quadrature scheme");
  fracevo::quad::QuadratureSpec s;
  s.scheme = c.scheme == FRACEVO_SCHEME_ADAPTIVE_SIMPSON ? fracevo::quad::Scheme::AdaptiveSimpson
                                                         : fracevo::quad::Scheme::GaussLegendrePanels;
  s.panels = c.panels;
  s.nodes_per_panel = c.nodes_per_panel;
  s.tail_cutoff = c.tail_cutoff;
  s.abs_tol = c.abs_tol;
  s.grading_levels = c.grading_levels;
  s.validate();
  return s;
}

}  // namespace

extern "C" {

const char* fracevo_version(void) { return FRACEVO_VERSION; }

const char* fracevo_status_string(fracevo_status status) {
  switch (status) {
    case FRACEVO_OK: return "ok";
    case FRACEVO_INVALID_ARGUMENT: return "invalid_argument";
    case FRACEVO_NON_CONVERGENCE: return "non_convergence";
    case FRACEVO_TOLERANCE_NOT_MET: return "tolerance_not_met";
    case FRACEVO_RANGE_EXCEEDED: return "range_exceeded";
    case FRACEVO_DIVERGENT_STRIP: return "divergent_strip";
    case FRACEVO_STRIP_VIOLATION: return "strip_violation";
    case FRACEVO_SINGULAR_ORIGIN: return "singular_origin";
    case FRACEVO_DIRAC_CASE: return "dirac_case";
    case FRACEVO_KINK_REFUSED: return "kink_refused";
    case FRACEVO_UNSUPPORTED: return "unsupported";
    case FRACEVO_BUFFER_TOO_SMALL: return "buffer_too_small";
    case FRACEVO_INTERNAL_ERROR: return "internal_error";
  }
  return "unknown_status";
}

fracevo_status fracevo_context_create(fracevo_context** out) {
  if (out == nullptr) return FRACEVO_INVALID_ARGUMENT;
  *out = new (std::nothrow) fracevo_context();
  return *out ? FRACEVO_OK : FRACEVO_INTERNAL_ERROR;
}

void fracevo_context_destroy(fracevo_context* ctx) { delete ctx; }

const char* fracevo_last_error(const fracevo_context* ctx) { return ctx ? ctx->last_error.c_str() : ""; }

fracevo_status fracevo_set_series(fracevo_context* ctx, double rel_tol, int max_terms) {
  return with_context(ctx, [&] {
    const fracevo::special::SeriesConfig cfg{rel_tol, max_terms};
    cfg.validate();
    ctx->series = cfg;
  });
}

fracevo_status fracevo_get_series(const fracevo_context* ctx, double* rel_tol, int* max_terms) {
  if (ctx == nullptr || rel_tol == nullptr || max_terms == nullptr) return FRACEVO_INVALID_ARGUMENT;
  *rel_tol = ctx->series.rel_tol;
  *max_terms = ctx->series.max_terms;
  return FRACEVO_OK;
}

fracevo_status fracevo_set_quadrature(fracevo_context* ctx, const fracevo_quadrature* spec) {
  return with_context(ctx, [&] {
    require_out(spec);
    ctx->quad = from_c(*spec);
  });
}

fracevo_status fracevo_get_quadrature(const fracevo_context* ctx, fracevo_quadrature* spec) {
  if (ctx == nullptr || spec == nullptr) return FRACEVO_INVALID_ARGUMENT;
  spec->scheme = ctx->quad.scheme == fracevo::quad::Scheme::AdaptiveSimpson ? FRACEVO_SCHEME_ADAPTIVE_SIMPSON
                                                                            : FRACEVO_SCHEME_GAUSS_LEGENDRE_PANELS;
  spec->panels = ctx->quad.panels;
  spec->nodes_per_panel = ctx->quad.nodes_per_panel;
  spec->tail_cutoff = ctx->quad.tail_cutoff;
  spec->abs_tol = ctx->quad.abs_tol;
  spec->grading_levels = ctx->quad.grading_levels;
  return FRACEVO_OK;
}

const char* fracevo_last_warning(const fracevo_context* ctx, int index) {
  if (ctx == nullptr || index < 0 || static_cast<std::size_t>(index) >= ctx->warnings.size()) return nullptr;
  return ctx->warnings[static_cast<std::size_t>(index)].c_str();
}

fracevo_status fracevo_reciprocal_gamma(double x, double* out) {
  return context_free([&] {
    require_out(out);
    *out = fracevo::special::reciprocal_gamma(x);
  });
}

fracevo_status fracevo_density_cutoff(double alpha, double* out) {
  return context_free([&] {
    require_out(out);
    *out = fracevo::special::density_cutoff(alpha);
  });
}

fracevo_status fracevo_ml_generalized(fracevo_context* ctx, double alpha, double beta, double z,
                                      fracevo_eval_result* out) {
  return with_context(ctx, [&] {
    require_out(out);
    fill(out, fracevo::special::ml_generalized({alpha, beta}, z, ctx->series));
  });
}

fracevo_status fracevo_ml_standard(fracevo_context* ctx, double alpha, double z, fracevo_eval_result* out) {
  return with_context(ctx, [&] {
    require_out(out);
    fill(out, fracevo::special::ml_standard(alpha, z, ctx->series));
  });
}

fracevo_status fracevo_ml_density(fracevo_context* ctx, double alpha, double z, fracevo_eval_result* out) {
  return with_context(ctx, [&] {
    require_out(out);
    fill(out, fracevo::special::ml_density(alpha, z, ctx->series));
  });
}

fracevo_status fracevo_ml_density_generalized(fracevo_context* ctx, double alpha, double beta, double x,
                                              fracevo_eval_result* out) {
  return with_context(ctx, [&] {
    require_out(out);
    fill(out, fracevo::special::ml_density_generalized({alpha, beta}, x, ctx->series));
  });
}

fracevo_status fracevo_laplace(fracevo_context* ctx, fracevo_time_fn fn, void* user_data, double t_max, double p,
                               double* out) {
  return with_context(ctx, [&] {
    require_out(out);
    *out = fracevo::transforms::laplace(wrap(fn, user_data, t_max), p, ctx->quad);
  });
}

fracevo_status fracevo_mellin(fracevo_context* ctx, fracevo_time_fn fn, void* user_data, double s, double* out) {
  return with_context(ctx, [&] {
    require_out(out);
    *out = fracevo::transforms::mellin(wrap(fn, user_data, 0.0), s, ctx->quad);
  });
}

fracevo_status fracevo_riemann_liouville(fracevo_context* ctx, fracevo_time_fn fn, void* user_data, double alpha,
                                         double t, double* out) {
  return with_context(ctx, [&] {
    require_out(out);
    *out = fracevo::transforms::riemann_liouville(wrap(fn, user_data, 0.0), alpha, t, ctx->quad);
  });
}

fracevo_status fracevo_subordinate(fracevo_context* ctx, fracevo_time_fn fn, void* user_data, double t_max,
                                   double alpha, double t, fracevo_subordination_result* out) {
  return with_context(ctx, [&] {
    require_out(out);
    ctx->warnings.clear();
    fracevo::subordination::SubordinationResult r =
        fracevo::subordination::subordinate({wrap(fn, user_data, t_max), alpha, t, ctx->quad});
    fill(out, r);
    ctx->warnings = std::move(r.warnings);
  });
}

fracevo_status fracevo_subordinate_grid(fracevo_context* ctx, fracevo_time_fn fn, void* user_data, double t_max,
                                        double alpha, const double* t_grid, size_t count,
                                        fracevo_subordination_result* results, fracevo_status* statuses) {
  fracevo_status first_failure = FRACEVO_OK;
  const fracevo_status setup = with_context(ctx, [&] {
    fracevo::require(count == 0 || (t_grid != nullptr && results != nullptr && statuses != nullptr),
                     "subordinate_grid: null array");
    ctx->warnings.clear();
    const auto entries = fracevo::subordination::subordinate_grid(wrap(fn, user_data, t_max), alpha,
                                                                  std::span<const double>(t_grid, count), ctx->quad);
    for (std::size_t i = 0; i < count; ++i) {
      fill(&results[i], entries[i].result);
      statuses[i] = entries[i].error ? to_status(*entries[i].error) : FRACEVO_OK;
      if (statuses[i] != FRACEVO_OK && first_failure == FRACEVO_OK) {
        first_failure = statuses[i];
        ctx->last_error = entries[i].message;
      }
    }
  });
  if (setup != FRACEVO_OK) return setup;
  return first_failure;
}

fracevo_status fracevo_heat_kernel(double r, double t, int n, double* out) {
  return context_free([&] {
    require_out(out);
    *out = fracevo::diffusion::heat_kernel({r, t, n, 1.0});
  });
}

fracevo_status fracevo_kernel_create(fracevo_context* ctx, double alpha, fracevo_kernel** out) {
  return with_context(ctx, [&] {
    require_out(out);
    *out = nullptr;
    auto handle = std::make_unique<fracevo_kernel>();
    handle->kernel = std::make_unique<fracevo::diffusion::FractionalHeatKernel>(alpha, ctx->quad);
    *out = handle.release();
  });
}

void fracevo_kernel_destroy(fracevo_kernel* kernel) { delete kernel; }

fracevo_status fracevo_kernel_eval(fracevo_kernel* kernel, double r, double t, int n,
                                   fracevo_subordination_result* out) {
  if (kernel == nullptr) return FRACEVO_INVALID_ARGUMENT;
  return guarded(&kernel->last_error, [&] {
    require_out(out);
    fill(out, (*kernel->kernel)(r, t, n));
  });
}

const char* fracevo_kernel_last_error(const fracevo_kernel* kernel) { return kernel ? kernel->last_error.c_str() : ""; }

fracevo_status fracevo_frac_kernel_mellin_closed(double r, double s, int n, double alpha, double* out) {
  return context_free([&] {
    require_out(out);
    *out = fracevo::diffusion::frac_kernel_mellin_closed(r, s, n, alpha);
  });
}

fracevo_status fracevo_mass_check(fracevo_context* ctx, double t, int n, double alpha, double* out) {
  return with_context(ctx, [&] {
    require_out(out);
    *out = fracevo::diffusion::mass_check(t, n, alpha, ctx->quad);
  });
}

fracevo_status fracevo_to_transformed(double spot, double strike, double rate, double volatility, double expiry,
                                      double t, double* tau, double* lambda0) {
  return context_free([&] {
    require_out(tau);
    require_out(lambda0);
    const auto c = fracevo::blackscholes::to_transformed({spot, strike, rate, volatility, expiry}, t);
    *tau = c.tau;
    *lambda0 = c.lambda0;
  });
}

fracevo_status fracevo_payoff(double S, double E, double* out) {
  return context_free([&] {
    require_out(out);
    *out = fracevo::blackscholes::payoff(S, E);
  });
}

fracevo_status fracevo_bs_price(double S, double E, double tau, double lambda0, double* out) {
  return context_free([&] {
    require_out(out);
    *out = fracevo::blackscholes::bs_price(S, E, {tau, lambda0});
  });
}

fracevo_status fracevo_frac_bs_price(fracevo_context* ctx, double S, double E, double alpha, double tau,
                                     double lambda0, fracevo_subordination_result* out) {
  return with_context(ctx, [&] {
    require_out(out);
    ctx->warnings.clear();
    auto r = fracevo::blackscholes::frac_bs_price(S, E, alpha, tau, lambda0, ctx->quad);
    fill(out, r);
    ctx->warnings = std::move(r.warnings);
  });
}

fracevo_status fracevo_frac_bs_residual(fracevo_context* ctx, double S, double E, double alpha,
                                        const double* tau_grid, size_t count, double lambda0,
                                        double* max_residual) {
  return with_context(ctx, [&] {
    require_out(max_residual);
    fracevo::require(tau_grid != nullptr && count > 0, "frac_bs_residual: empty tau grid");
    ctx->warnings.clear();
    auto r = fracevo::blackscholes::frac_bs_residual(S, E, alpha, std::span<const double>(tau_grid, count), lambda0,
                                                     ctx->quad);
    *max_residual = r.max_residual;
    ctx->warnings = std::move(r.warnings);
  });
}

fracevo_status fracevo_verify(fracevo_context* ctx, const char* suite, double alpha, int* passed,
                              size_t* report_size) {
  return with_context(ctx, [&] {
    fracevo::require(suite != nullptr, "verify: suite is null");
    require_out(passed);
    require_out(report_size);
    fracevo::verify::VerifyOptions options;
    if (alpha > 0.0) options.alpha = alpha;
    options.quad = ctx->quad;
    options.series = ctx->series;
    const fracevo::verify::Report report = fracevo::verify::run_suite(suite, options);
    ctx->report = fracevo::verify::to_json(report, options);
    *passed = report.passed() ? 1 : 0;
    *report_size = ctx->report.size() + 1;
  });
}

fracevo_status fracevo_copy_report(const fracevo_context* ctx, char* buffer, size_t buffer_size) {
  if (ctx == nullptr || buffer == nullptr) return FRACEVO_INVALID_ARGUMENT;
  if (buffer_size < ctx->report.size() + 1) return FRACEVO_BUFFER_TOO_SMALL;
  std::memcpy(buffer, ctx->report.c_str(), ctx->report.size() + 1);
  return FRACEVO_OK;
}

}  // extern "C"
