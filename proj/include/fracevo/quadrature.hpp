#pragma once

#include <functional>
#include <span>
#include <vector>

namespace fracevo::quad {

using Integrand = std::function<double(double)>;

enum class Scheme {
  AdaptiveSimpson,
  GaussLegendrePanels,
};

/// Ratio between consecutive panels of a geometrically graded mesh.
inline constexpr double kGradingRatio = 0.2;

/// Evaluation cap for the adaptive schemes.
inline constexpr long kEvaluationBudget = 1'000'000;

struct QuadratureSpec {
  Scheme scheme = Scheme::GaussLegendrePanels;
  int panels = 64;
  int nodes_per_panel = 16;
  double tail_cutoff = 40.0;
  double abs_tol = 1e-10;
  /// Geometric refinement levels of the first panel toward the left endpoint
  /// (GaussLegendrePanels only). Resolves integrable endpoint singularities
  /// such as z^{-1/2} or t^alpha behaviour.
  int grading_levels = 0;

  /// Throws InvalidArgument when an invariant is violated.
  void validate() const;
};

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

struct Node {
  double x;
  double w;
};

/// Node set of the GaussLegendrePanels scheme on [a, b]: `panels` equal
/// panels, the first one replaced by a geometric mesh when grading_levels > 0.
/// Nodes are ordered by panel, so summing in order is deterministic.
std::vector<Node> panel_nodes(double a, double b, const QuadratureSpec& spec);

/// Integral of f over [a, b] with the spec's scheme.
/// Throws ToleranceNotMet when the adaptive scheme runs out of evaluations.
double integrate_interval(const Integrand& f, double a, double b, const QuadratureSpec& spec);

/// Integral of f over [0, spec.tail_cutoff]. The caller picks the cutoff so
/// that the discarded tail is below spec.abs_tol.
double integrate_halfline(const Integrand& f, const QuadratureSpec& spec);

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
  bool converged = false;
};

/// Globally adaptive Gauss-Kronrod (7/15) over the consecutive intervals of
/// `breakpoints`. Stops once the summed error estimate is below
/// max(abs_tol, rel_tol * |value|) or `max_intervals` is reached.
AdaptiveResult gauss_kronrod(const Integrand& f, std::span<const double> breakpoints,
                             double abs_tol, double rel_tol, int max_intervals = 2000);

struct GradedResult {
  double value = 0.0;
  /// Geometric tail added after the last level (0 when none was needed).
  double extrapolated_tail = 0.0;
  int levels = 0;
  /// Ratio of the last two level contributions.
  double ratio = 0.0;
};

struct GradedOptions {
  int nodes = 16;
  int panels_per_level = 2;
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int min_levels = 6;
  int max_levels = 400;
};

/// Integral of f over (a, b] where f may be singular (or merely non-smooth)
/// at `a`. The interval is cut into levels [a + d r^{k+1}, a + d r^k],
/// d = b - a, r = kGradingRatio. When the level contributions decay
/// geometrically but slowly (algebraic singularity close to the limit of
/// integrability) the remaining geometric tail is added analytically.
/// Throws DivergentStrip when the contributions stop decreasing and
/// ToleranceNotMet when max_levels is exhausted.
GradedResult integrate_graded(const Integrand& f, double a, double b, const GradedOptions& opt = {});

}  // namespace fracevo::quad
