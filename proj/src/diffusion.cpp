#include "fracevo/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracevo/error.hpp"
#include "fracevo/gamma.hpp"
#include "fracevo/mittag_leffler.hpp"

namespace fracevo::diffusion {

namespace {

double radial_gaussian(double r, double t, int n) {
  return std::pow(4.0 * std::numbers::pi * t, -0.5 * n) * std::exp(-r * r / (4.0 * t));
}

quad::QuadratureSpec origin_graded(const quad::QuadratureSpec& quad) {
  quad::QuadratureSpec spec = quad;
  spec.grading_levels = std::max(spec.grading_levels, kOriginGradingLevels);
  return spec;
}

}  // namespace

void KernelQuery::validate() const {
  require(std::isfinite(r) && r >= 0.0, "KernelQuery: r must be non-negative");
  require(std::isfinite(t) && t > 0.0, "KernelQuery: t must be positive");
  require(n >= 1 && n <= 10, "KernelQuery: n must be in [1, 10]");
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 1.0, "KernelQuery: alpha must satisfy 0 < alpha <= 1");
}

double heat_kernel(const KernelQuery& q) {
  q.validate();
  return radial_gaussian(q.r, q.t, q.n);
}

FractionalHeatKernel::FractionalHeatKernel(double alpha, const quad::QuadratureSpec& quad) : alpha_(alpha) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 1.0,
          "FractionalHeatKernel: alpha must satisfy 0 < alpha <= 1");
  table_ = std::make_shared<const subordination::DensityTable>(alpha, origin_graded(quad));
}

subordination::SubordinationResult FractionalHeatKernel::operator()(double r, double t, int n) const {
  const KernelQuery q{r, t, n, alpha_};
  q.validate();
  if (alpha_ == 1.0) return {heat_kernel(q), 1.0, {}};
  if (r == 0.0 && n >= 2)
    throw Error(ErrorCode::SingularOrigin, "frac_heat_kernel: G_alpha diverges at r = 0 for n >= 2");
  const subordination::TimeFunction slice{
      [r, n](double z) { return z > 0.0 ? radial_gaussian(r, z, n) : 0.0; }, "heat kernel slice"};
  return subordination::subordinate(*table_, slice, t);
}

subordination::SubordinationResult frac_heat_kernel(const KernelQuery& q, const quad::QuadratureSpec& quad) {
  q.validate();
  if (q.alpha == 1.0) return {heat_kernel(q), 1.0, {}};
  if (q.r == 0.0 && q.n >= 2)
    throw Error(ErrorCode::SingularOrigin, "frac_heat_kernel: G_alpha diverges at r = 0 for n >= 2");
  return FractionalHeatKernel(q.alpha, quad)(q.r, q.t, q.n);
}

double frac_kernel_mellin_closed(double r, double s, int n, double alpha) {
  require(std::isfinite(r) && r > 0.0, "frac_kernel_mellin_closed: r must be positive");
  require(n >= 1 && n <= 10, "frac_kernel_mellin_closed: n must be in [1, 10]");
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 1.0,
          "frac_kernel_mellin_closed: alpha must satisfy 0 < alpha <= 1");
  const double upper = alpha * std::min(0.5 * n, 1.0);
  if (!(std::isfinite(s) && s > 0.0 && s < upper))
    throw Error(ErrorCode::StripViolation, "frac_kernel_mellin_closed: s outside (0, alpha min(n/2, 1))");
  const double q = s / alpha;
  return std::pow(std::numbers::pi, -0.5 * n) * std::pow(2.0, -2.0 * q) * std::pow(r, 2.0 * q - n) *
         special::gamma_function(0.5 * n - q) * special::gamma_function(1.0 - q) * special::reciprocal_gamma(1.0 - s) /
         alpha;
}

double mass_check(double t, int n, double alpha, const quad::QuadratureSpec& quad) {
  const KernelQuery q{0.0, t, n, alpha};
  q.validate();
  if (n != 1) throw Error(ErrorCode::Unsupported, "mass_check: only n = 1 is supported");
  quad.validate();
  // Widest Gaussian in the mixture has variance 2 t^alpha Z_max; cut at exp(-40).
  const double r_cut = std::sqrt(160.0 * std::pow(t, alpha) * special::density_cutoff(alpha));
  const FractionalHeatKernel kernel(alpha, quad);
  return 2.0 * quad::integrate_interval([&](double r) { return kernel(r, t, 1).value; }, 0.0, r_cut, quad);
}

}  // namespace fracevo::diffusion
