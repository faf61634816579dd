#pragma once

// Radial heat kernel G(r, t) = (4 pi t)^{-n/2} exp(-r^2/(4t)) in n dimensions
// and its fractional counterpart G_alpha(r, t) obtained by subordination.

#include <memory>

#include "fracevo/quadrature.hpp"
#include "fracevo/subordination.hpp"

namespace fracevo::diffusion {

struct KernelQuery {
  double r = 0.0;
  double t = 1.0;
  int n = 1;
  double alpha = 1.0;

  /// r >= 0, t > 0, 1 <= n <= 10, 0 < alpha <= 1.
  void validate() const;
};

/// Grading depth toward z = 0 applied to the density table. At r = 0 the
/// subordinated integrand behaves like z^{-1/2} (n = 1).
inline constexpr int kOriginGradingLevels = 40;

double heat_kernel(const KernelQuery& q);

/// Reusable evaluator for fixed alpha: the density table is built once.
class FractionalHeatKernel {
 public:
  explicit FractionalHeatKernel(double alpha, const quad::QuadratureSpec& quad = {});

  double alpha() const { return alpha_; }

  /// Throws SingularOrigin for r = 0 with n >= 2 and alpha < 1.
  subordination::SubordinationResult operator()(double r, double t, int n) const;

 private:
  double alpha_;
  std::shared_ptr<const subordination::DensityTable> table_;
};

subordination::SubordinationResult frac_heat_kernel(const KernelQuery& q, const quad::QuadratureSpec& quad = {});

/// Mellin transform in t of G_alpha(r, .):
///   (1/alpha) pi^{-n/2} 2^{-2s/alpha} r^{2s/alpha - n} Gamma(n/2 - s/alpha) Gamma(1 - s/alpha) / Gamma(1 - s).
/// Throws StripViolation unless 0 < s < alpha min(n/2, 1).
double frac_kernel_mellin_closed(double r, double s, int n, double alpha);

/// 2 Int_0^inf G_alpha(r, t) dr for n = 1 (Unsupported otherwise).
double mass_check(double t, int n, double alpha, const quad::QuadratureSpec& quad = {});

}  // namespace fracevo::diffusion
