#include "fracevo/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "fracevo/error.hpp"

namespace fracevo::quad {

void QuadratureSpec::validate() const {
  require(panels > 0, "quadrature: panels must be positive");
  require(nodes_per_panel > 0, "quadrature: nodes_per_panel must be positive");
  require(static_cast<long>(panels) * nodes_per_panel <= 1'000'000,
          "quadrature: panels * nodes_per_panel must not exceed 1e6");
  require(tail_cutoff > 0.0 && std::isfinite(tail_cutoff), "quadrature: tail_cutoff must be positive");
  require(abs_tol > 0.0, "quadrature: abs_tol must be positive");
  require(grading_levels >= 0 && grading_levels <= 400, "quadrature: grading_levels must be in [0, 400]");
}

GaussRule gauss_legendre(int n) {
  require(n > 0 && n <= 4096, "gauss_legendre: node count must be in [1, 4096]");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

namespace {

void append_panel(std::vector<Node>& out, const GaussRule& rule, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    out.push_back({mid + half * rule.nodes[i], half * rule.weights[i]});
}

double sum_nodes(const Integrand& f, std::span<const Node> nodes) {
  double s = 0.0;
  for (const Node& n : nodes) s += n.w * f(n.x);
  return s;
}

// Adaptive Simpson with Richardson correction. `budget` counts remaining
// function evaluations.
double simpson_step(const Integrand& f, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth, long& budget) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  if (budget < 2) throw Error(ErrorCode::ToleranceNotMet, "adaptive_simpson: evaluation budget exhausted");
  const double flm = f(lm);
  const double frm = f(rm);
  budget -= 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0) throw Error(ErrorCode::ToleranceNotMet, "adaptive_simpson: recursion depth exhausted");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, budget) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, budget);
}

double adaptive_simpson(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  long budget = kEvaluationBudget;
  const double h = (b - a) / spec.panels;
  const double tol = spec.abs_tol / spec.panels;
  double total = 0.0;
  double fa = f(a);
  --budget;
  for (int p = 0; p < spec.panels; ++p) {
    const double lo = a + p * h;
    const double hi = (p + 1 == spec.panels) ? b : a + (p + 1) * h;
    const double fm = f(0.5 * (lo + hi));
    const double fb = f(hi);
    budget -= 2;
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson_step(f, lo, hi, fa, fm, fb, whole, tol, 60, budget);
    fa = fb;
  }
  return total;
}

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment kronrod15(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    resk += kWgk[j] * (f1[j] + f2[j]);
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1[j] + f2[j]);
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  resk *= half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg * half));
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  if (resabs > uflow / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {a, b, resk, err};
}

}  // namespace

std::vector<Node> panel_nodes(double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  require(a < b, "panel_nodes: require a < b");
  const GaussRule rule = gauss_legendre(spec.nodes_per_panel);
  std::vector<Node> nodes;
  nodes.reserve(static_cast<std::size_t>(spec.panels + spec.grading_levels) * rule.nodes.size());
  const double h = (b - a) / spec.panels;
  if (spec.grading_levels > 0) {
    // Innermost panel first so nodes stay sorted.
    double hi = h * std::pow(kGradingRatio, spec.grading_levels);
    append_panel(nodes, rule, a, a + hi);
    for (int k = spec.grading_levels - 1; k >= 0; --k) {
      const double lo = hi;
      hi = h * std::pow(kGradingRatio, k);
      append_panel(nodes, rule, a + lo, a + hi);
    }
  } else {
    append_panel(nodes, rule, a, a + h);
  }
  for (int p = 1; p < spec.panels; ++p) {
    const double hi = (p + 1 == spec.panels) ? b : a + (p + 1) * h;
    append_panel(nodes, rule, a + p * h, hi);
  }
  return nodes;
}

double integrate_interval(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  require(a < b, "integrate_interval: require a < b");
  if (spec.scheme == Scheme::AdaptiveSimpson) return adaptive_simpson(f, a, b, spec);
  const std::vector<Node> nodes = panel_nodes(a, b, spec);
  return sum_nodes(f, nodes);
}

double integrate_halfline(const Integrand& f, const QuadratureSpec& spec) {
  spec.validate();
  return integrate_interval(f, 0.0, spec.tail_cutoff, spec);
}

AdaptiveResult gauss_kronrod(const Integrand& f, std::span<const double> breakpoints, double abs_tol,
                             double rel_tol, int max_intervals) {
  require(breakpoints.size() >= 2, "gauss_kronrod: need at least two breakpoints");
  std::priority_queue<Segment> heap;
  AdaptiveResult out;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i] < breakpoints[i + 1])) continue;
    Segment s = kronrod15(f, breakpoints[i], breakpoints[i + 1]);
    out.evaluations += 15;
    out.value += s.value;
    out.error += s.error;
    heap.push(s);
  }
  std::vector<Segment> finished;
  while (!heap.empty()) {
    const double tol = std::max(abs_tol, rel_tol * std::abs(out.value));
    if (out.error <= tol) {
      out.converged = true;
      break;
    }
    if (static_cast<int>(heap.size() + finished.size()) >= max_intervals) break;
    Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b)) {
      // Interval is at machine resolution; keep its estimate as is.
      finished.push_back(worst);
      continue;
    }
    const Segment left = kronrod15(f, worst.a, mid);
    const Segment right = kronrod15(f, mid, worst.b);
    out.evaluations += 30;
    out.value += left.value + right.value - worst.value;
    out.error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  if (heap.empty()) out.converged = out.error <= std::max(abs_tol, rel_tol * std::abs(out.value));
  // Re-sum from the final partition so the result does not carry the
  // cancellation residue of the running updates.
  double value = 0.0;
  double error = 0.0;
  std::vector<Segment> all = std::move(finished);
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  for (const Segment& s : all) {
    value += s.value;
    error += s.error;
  }
  out.value = value;
  out.error = error;
  return out;
}

GradedResult integrate_graded(const Integrand& f, double a, double b, const GradedOptions& opt) {
  require(a < b, "integrate_graded: require a < b");
  require(opt.min_levels >= 2 && opt.max_levels >= opt.min_levels, "integrate_graded: bad level limits");
  const GaussRule rule = gauss_legendre(opt.nodes);
  const double width = b - a;
  constexpr int kDivergenceRun = 25;

  GradedResult out;
  double prev = std::numeric_limits<double>::quiet_NaN();
  double prev_ratio = std::numeric_limits<double>::quiet_NaN();
  int growing = 0;
  std::vector<Node> nodes;
  for (int k = 0; k < opt.max_levels; ++k) {
    const double hi = width * std::pow(kGradingRatio, k);
    const double lo = hi * kGradingRatio;
    if (lo < 1e-290) break;
    nodes.clear();
    const double step = (hi - lo) / opt.panels_per_level;
    for (int p = 0; p < opt.panels_per_level; ++p) append_panel(nodes, rule, a + lo + p * step, a + lo + (p + 1) * step);
    const double c = sum_nodes(f, nodes);
    out.value += c;
    out.levels = k + 1;
    if (!std::isfinite(out.value))
      throw Error(ErrorCode::DivergentStrip, "integrate_graded: non-finite contribution near the endpoint");

    const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(out.value));
    double ratio = std::numeric_limits<double>::quiet_NaN();
    if (k > 0 && prev != 0.0) ratio = c / prev;
    out.ratio = ratio;

    if (!std::isnan(ratio) && ratio >= 1.0 && std::abs(c) > tol) {
      if (++growing >= kDivergenceRun)
        throw Error(ErrorCode::DivergentStrip, "integrate_graded: level contributions do not decay");
    } else {
      growing = 0;
    }

    if (out.levels >= opt.min_levels) {
      if (c == 0.0 && prev == 0.0) return out;
      if (!std::isnan(ratio) && std::abs(ratio) < 1.0) {
        const double tail = c * ratio / (1.0 - ratio);
        const double spread = std::isnan(prev_ratio) ? std::abs(ratio) : std::abs(ratio - prev_ratio);
        const double uncertainty = std::abs(c) * spread / ((1.0 - ratio) * (1.0 - ratio));
        if (std::abs(c) <= tol * 1e-3 && std::abs(tail) <= tol) return out;
        if (uncertainty <= tol) {
          out.value += tail;
          out.extrapolated_tail = tail;
          return out;
        }
      }
    }
    prev_ratio = ratio;
    prev = c;
  }
  throw Error(ErrorCode::ToleranceNotMet,
              "integrate_graded: level budget exhausted after " + std::to_string(out.levels) + " levels");
}

}  // namespace fracevo::quad
