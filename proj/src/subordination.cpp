#include "fracevo/subordination.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <utility>

namespace fracevo::subordination {

namespace {

void require_alpha(double alpha, const char* what) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 1.0, std::string(what) + ": alpha must satisfy 0 < alpha <= 1");
}

void require_time(double t, const char* what) {
  require(std::isfinite(t) && t >= 0.0, std::string(what) + ": t must be finite and non-negative");
}

void check_range(const TimeFunction& u, double alpha, double t, double cutoff) {
  const double needed = std::pow(t, alpha) * cutoff;
  if (needed > u.t_max)
    throw Error(ErrorCode::RangeExceeded, "subordinate: needs the solution up to t^alpha * Z_max = " +
                                              std::to_string(needed) + ", beyond its t_max");
}

void append_mass_warning(SubordinationResult& r) {
  if (std::abs(r.density_mass_used - 1.0) > kMassTolerance)
    r.warnings.push_back("density mass " + std::to_string(r.density_mass_used) + " outside [0.999, 1.001]");
}

SubordinationResult dirac(const TimeFunction& u, double t) {
  SubordinationResult r;
  r.value = u(t);
  r.density_mass_used = 1.0;
  return r;
}

double density(double alpha, double z) { return special::ml_density(alpha, z).value; }

// Generic path for the adaptive scheme and for the scaled-density form.
SubordinationResult direct(const SubordinationRequest& req) {
  const double alpha = req.alpha;
  const double t = req.t;
  const double cutoff = special::density_cutoff(alpha);
  const quad::QuadratureSpec spec = effective_spec(alpha, req.quad);
  SubordinationResult r;
  if (req.form == Form::ScaledSolution) {
    const double scale = std::pow(t, alpha);
    r.value = quad::integrate_interval([&](double z) { return density(alpha, z) * req.solution(scale * z); }, 0.0,
                                       cutoff, spec);
    r.density_mass_used = quad::integrate_interval([&](double z) { return density(alpha, z); }, 0.0, cutoff, spec);
  } else {
    const double inv_scale = std::pow(t, -alpha);
    const double upper = cutoff / inv_scale;
    r.value = inv_scale * quad::integrate_interval(
                              [&](double w) { return density(alpha, inv_scale * w) * req.solution(w); }, 0.0, upper,
                              spec);
    r.density_mass_used =
        inv_scale * quad::integrate_interval([&](double w) { return density(alpha, inv_scale * w); }, 0.0, upper, spec);
  }
  if (alpha > kNearOneAlpha) r.warnings.push_back("alpha > 0.95: panel count doubled, accuracy degrades toward 1");
  append_mass_warning(r);
  return r;
}

}  // namespace

quad::QuadratureSpec effective_spec(double alpha, const quad::QuadratureSpec& quad) {
  quad::QuadratureSpec spec = quad;
  if (alpha > kNearOneAlpha && alpha < 1.0) spec.panels *= 2;
  spec.validate();
  return spec;
}

DensityTable::DensityTable(double alpha, const quad::QuadratureSpec& quad, const special::SeriesConfig& cfg)
    : alpha_(alpha), cutoff_(0.0) {
  require_alpha(alpha, "DensityTable");
  cfg.validate();
  quad.validate();
  cutoff_ = special::density_cutoff(alpha);
  if (is_dirac()) return;
  require(quad.scheme == quad::Scheme::GaussLegendrePanels, "DensityTable: requires the gauss_legendre_panels scheme");
  const quad::QuadratureSpec spec = effective_spec(alpha, quad);
  nodes_ = quad::panel_nodes(0.0, cutoff_, spec);
  int unconverged = 0;
  mass_ = 0.0;
  for (quad::Node& n : nodes_) {
    const special::EvalResult f = special::ml_density(alpha, n.x, cfg);
    if (!f.converged) ++unconverged;
    n.w *= f.value;
    mass_ += n.w;
  }
  if (alpha > kNearOneAlpha) warnings_.push_back("alpha > 0.95: panel count doubled, accuracy degrades toward 1");
  if (unconverged > 0)
    warnings_.push_back(std::to_string(unconverged) + " density evaluations did not reach the series tolerance");
}

double DensityTable::integrate(const std::function<double(double)>& g) const {
  double s = 0.0;
  for (const quad::Node& n : nodes_) s += n.w * g(n.x);
  return s;
}

SubordinationResult subordinate(const DensityTable& table, const TimeFunction& solution, double t) {
  require(static_cast<bool>(solution.eval), "subordinate: TimeFunction has no callable");
  require_time(t, "subordinate");
  if (t == 0.0) return dirac(solution, 0.0);
  if (table.is_dirac()) return dirac(solution, t);
  check_range(solution, table.alpha(), t, table.cutoff());
  const double scale = std::pow(t, table.alpha());
  SubordinationResult r;
  r.value = table.integrate([&](double z) { return solution(scale * z); });
  r.density_mass_used = table.mass();
  r.warnings = table.warnings();
  append_mass_warning(r);
  return r;
}

SubordinationResult subordinate(const SubordinationRequest& req) {
  require(static_cast<bool>(req.solution.eval), "subordinate: TimeFunction has no callable");
  require_alpha(req.alpha, "subordinate");
  require_time(req.t, "subordinate");
  req.quad.validate();
  if (req.t == 0.0) return dirac(req.solution, 0.0);
  if (req.alpha == 1.0) return dirac(req.solution, req.t);
  check_range(req.solution, req.alpha, req.t, special::density_cutoff(req.alpha));
  if (req.form == Form::ScaledSolution && req.quad.scheme == quad::Scheme::GaussLegendrePanels)
    return subordinate(DensityTable(req.alpha, req.quad), req.solution, req.t);
  return direct(req);
}

std::vector<GridEntry> subordinate_grid(const TimeFunction& solution, double alpha, std::span<const double> t_grid,
                                        const quad::QuadratureSpec& quad) {
  std::vector<GridEntry> out(t_grid.size());
  std::optional<DensityTable> table;
  std::optional<Error> setup_error;
  try {
    require_alpha(alpha, "subordinate_grid");
    if (quad.scheme == quad::Scheme::GaussLegendrePanels) table.emplace(alpha, quad);
  } catch (const Error& e) {
    setup_error = e;
  }
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    GridEntry& entry = out[i];
    entry.t = t_grid[i];
    try {
      if (setup_error) throw *setup_error;
      if (table) {
        entry.result = subordinate(*table, solution, t_grid[i]);
      } else {
        entry.result = subordinate(SubordinationRequest{solution, alpha, t_grid[i], quad, Form::ScaledSolution});
      }
    } catch (const Error& e) {
      entry.error = e.code();
      entry.message = e.what();
    }
  }
  return out;
}

std::function<double(double)> subordinate_kernel(Kernel kernel, double alpha, double t,
                                                 const quad::QuadratureSpec& quad) {
  require(static_cast<bool>(kernel), "subordinate_kernel: kernel has no callable");
  require_alpha(alpha, "subordinate_kernel");
  require(std::isfinite(t) && t > 0.0, "subordinate_kernel: t must be positive");
  if (quad.scheme != quad::Scheme::GaussLegendrePanels) {
    return [kernel = std::move(kernel), alpha, t, quad](double y) {
      const TimeFunction slice{[&](double z) { return kernel(y, z); }, "kernel slice"};
      return subordinate(SubordinationRequest{slice, alpha, t, quad, Form::ScaledSolution}).value;
    };
  }
  quad::QuadratureSpec graded = quad;
  graded.grading_levels = std::max(graded.grading_levels, kKernelGradingLevels);
  auto table = std::make_shared<const DensityTable>(alpha, graded);
  return [kernel = std::move(kernel), table, t](double y) {
    const TimeFunction slice{[&](double z) { return kernel(y, z); }, "kernel slice"};
    return subordinate(*table, slice, t).value;
  };
}

}  // namespace fracevo::subordination
