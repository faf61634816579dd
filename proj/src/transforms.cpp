#include "fracevo/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "fracevo/error.hpp"
#include "fracevo/gamma.hpp"

namespace fracevo::transforms {

namespace {

constexpr double kLaplaceDecay = 40.0;

// Levels needed to shrink a first panel of width h to ~1e-20 * min(1, h).
// An integrable t^{-1/2} leaves O(sqrt(width)) in the innermost panel, so the
// floor sits well below 1e-14.
int auto_grading_levels(double h) {
  const double target = 1e-20 * std::min(1.0, h);
  const int levels = static_cast<int>(std::ceil(std::log(h / target) / std::log(1.0 / quad::kGradingRatio)));
  return std::clamp(levels, 1, 400);
}

quad::GradedOptions graded_options(const quad::QuadratureSpec& spec, int panels_per_level) {
  quad::GradedOptions opt;
  opt.nodes = spec.nodes_per_panel;
  opt.panels_per_level = panels_per_level;
  opt.abs_tol = spec.abs_tol * 1e-2;
  opt.rel_tol = 1e-12;
  return opt;
}

void require_callable(const TimeFunction& f, const char* what) {
  require(static_cast<bool>(f.eval), std::string(what) + ": TimeFunction has no callable");
}

}  // namespace

double laplace(const TimeFunction& f, double p, const quad::QuadratureSpec& spec) {
  require_callable(f, "laplace");
  require(std::isfinite(p) && p > 0.0, "laplace: p must be positive");
  spec.validate();
  const double cutoff = kLaplaceDecay / p;
  if (cutoff > f.t_max)
    throw Error(ErrorCode::RangeExceeded, "laplace: truncation point 40/p exceeds the function's t_max");
  quad::QuadratureSpec s = spec;
  if (s.scheme == quad::Scheme::GaussLegendrePanels)
    s.grading_levels = std::max(spec.grading_levels, auto_grading_levels(cutoff / spec.panels));
  return quad::integrate_interval([&](double t) { return std::exp(-p * t) * f(t); }, 0.0, cutoff, s);
}

double mellin(const TimeFunction& f, double s, const quad::QuadratureSpec& spec) {
  require_callable(f, "mellin");
  if (!(std::isfinite(s) && s > 0.0 && s < 1.0))
    throw Error(ErrorCode::DivergentStrip, "mellin: s must lie in the supported strip (0, 1)");
  spec.validate();
  if (std::isfinite(f.t_max))
    throw Error(ErrorCode::RangeExceeded, "mellin: the transform needs the function on the whole half-line");
  const quad::GradedOptions opt = graded_options(spec, 4);
  const double inv_s = 1.0 / s;
  // (0, 1]: t = w^{1/s}.
  const quad::GradedResult near =
      quad::integrate_graded([&](double w) { return inv_s * f(std::pow(w, inv_s)); }, 0.0, 1.0, opt);
  // [1, inf): t = 1/v.
  const quad::GradedResult far = quad::integrate_graded(
      [&](double v) {
        const double value = f(1.0 / v);
        return value == 0.0 ? 0.0 : std::pow(v, -s - 1.0) * value;
      },
      0.0, 1.0, opt);
  return near.value + far.value;
}

double riemann_liouville(const TimeFunction& f, double alpha, double t, const quad::QuadratureSpec& spec) {
  require_callable(f, "riemann_liouville");
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 1.0, "riemann_liouville: alpha must satisfy 0 < alpha <= 1");
  require(std::isfinite(t) && t > 0.0, "riemann_liouville: t must be positive");
  spec.validate();
  if (t > f.t_max) throw Error(ErrorCode::RangeExceeded, "riemann_liouville: t exceeds the function's t_max");
  const double inv_alpha = 1.0 / alpha;
  const double width = std::pow(t, alpha);
  const double half = 0.5 * width;
  const quad::GradedOptions opt = graded_options(spec, 2);
  // Left half, graded toward w = 0 (tau = t).
  const quad::GradedResult left =
      quad::integrate_graded([&](double w) { return f(t - std::pow(w, inv_alpha)); }, 0.0, half, opt);
  // Right half in v = t^alpha - w, graded toward v = 0 (tau = 0); tau is formed
  // without cancellation as t (1 - (1 - v/t^alpha)^{1/alpha}).
  const quad::GradedResult right = quad::integrate_graded(
      [&](double v) { return f(-t * std::expm1(inv_alpha * std::log1p(-v / width))); }, 0.0, half, opt);
  return (left.value + right.value) * special::reciprocal_gamma(alpha + 1.0);
}

double check_lemma1(const TimeFunction& u, const TimeFunction& u_alpha, double alpha, std::span<const double> p_grid,
                    const quad::QuadratureSpec& spec) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 1.0, "check_lemma1: alpha must satisfy 0 < alpha <= 1");
  require(!p_grid.empty(), "check_lemma1: p_grid is empty");
  double worst = 0.0;
  for (double p : p_grid) {
    require(std::isfinite(p) && p > 0.0, "check_lemma1: every p must be positive");
    const double lhs = laplace(u_alpha, p, spec);
    const double rhs = std::pow(p, alpha - 1.0) * laplace(u, std::pow(p, alpha), spec);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double check_lemma2(const TimeFunction& u, const TimeFunction& u_alpha, double alpha, std::span<const double> s_grid,
                    const quad::QuadratureSpec& spec) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 1.0, "check_lemma2: alpha must satisfy 0 < alpha <= 1");
  require(!s_grid.empty(), "check_lemma2: s_grid is empty");
  double worst = 0.0;
  for (double s : s_grid) {
    if (!(std::isfinite(s) && s > 0.0 && s < alpha && s < 1.0))
      throw Error(ErrorCode::DivergentStrip, "check_lemma2: need 0 < s < alpha so that s/alpha stays inside (0, 1)");
    const double lhs = mellin(u_alpha, s, spec);
    const double factor = special::gamma_function(1.0 - s / alpha) * special::reciprocal_gamma(1.0 - s) / alpha;
    const double rhs = factor * mellin(u, s / alpha, spec);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

std::vector<double> default_s_grid(double alpha) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 1.0, "default_s_grid: alpha must satisfy 0 < alpha <= 1");
  return {0.25 * alpha, 0.5 * alpha, 0.75 * alpha};
}

}  // namespace fracevo::transforms
