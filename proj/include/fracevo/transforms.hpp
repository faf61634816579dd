#pragma once

// Laplace and Mellin transforms on the half-line and the Riemann-Liouville
// fractional integral, plus the two transform identities that tie a
// solution u to its fractional extension u_alpha.

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "fracevo/quadrature.hpp"

namespace fracevo::transforms {

/// A known solution t -> u(t) at a fixed spatial point. `eval` must be
/// finite on (0, t_max] and safe to call concurrently.
struct TimeFunction {
  std::function<double(double)> eval;
  std::string label;
  double t_max = std::numeric_limits<double>::infinity();

  double operator()(double t) const { return eval(t); }
};

/// Int_0^{40/p} e^{-pt} f(t) dt. The first panel is graded toward t = 0 so
/// that t^alpha-type behaviour at the origin is resolved.
/// Throws RangeExceeded when 40/p is beyond f.t_max.
double laplace(const TimeFunction& f, double p, const quad::QuadratureSpec& spec = {});

/// Int_0^inf t^{s-1} f(t) dt for 0 < s < 1, split at t = 1. Both halves are
/// mapped onto (0, 1] with the singular end at 0 (t = w^{1/s} below 1,
/// t = 1/v above) and integrated over geometric levels.
/// Throws DivergentStrip when the integral does not converge at this s.
double mellin(const TimeFunction& f, double s, const quad::QuadratureSpec& spec = {});

/// (1/Gamma(alpha)) Int_0^t (t - tau)^{alpha-1} f(tau) dtau, 0 < alpha <= 1,
/// evaluated as (1/Gamma(alpha+1)) Int_0^{t^alpha} f(t - w^{1/alpha}) dw.
double riemann_liouville(const TimeFunction& f, double alpha, double t, const quad::QuadratureSpec& spec = {});

/// max_p |L[u_alpha](p) - p^{alpha-1} L[u](p^alpha)|.
double check_lemma1(const TimeFunction& u, const TimeFunction& u_alpha, double alpha, std::span<const double> p_grid,
                    const quad::QuadratureSpec& spec = {});

/// max_s |M[u_alpha](s) - (1/alpha) Gamma(1 - s/alpha)/Gamma(1 - s) M[u](s/alpha)|.
/// Every s must satisfy 0 < s < alpha (so that s/alpha < 1 too); otherwise
/// DivergentStrip.
double check_lemma2(const TimeFunction& u, const TimeFunction& u_alpha, double alpha, std::span<const double> s_grid,
                    const quad::QuadratureSpec& spec = {});

/// {alpha/4, alpha/2, 3 alpha/4}.
std::vector<double> default_s_grid(double alpha);

}  // namespace fracevo::transforms
