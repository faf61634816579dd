#pragma once

// Fractional extension of a known solution by averaging it against the
// density f_alpha:
//
//   u_alpha(t) = Int_0^inf f_alpha(z) u(t^alpha z) dz                 (ScaledSolution)
//              = t^{-alpha} Int_0^inf f_alpha(t^{-alpha} w) u(w) dw    (ScaledDensity)
//
// Both integrals are truncated at z = density_cutoff(alpha). The scaled
// solution form samples f_alpha on a grid that does not depend on t, so a
// DensityTable built once serves any number of evaluations. For alpha = 1
// the density is the Dirac mass at 1 and u_alpha(t) = u(t) is returned
// without quadrature.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracevo/error.hpp"
#include "fracevo/mittag_leffler.hpp"
#include "fracevo/quadrature.hpp"
#include "fracevo/transforms.hpp"

namespace fracevo::subordination {

using transforms::TimeFunction;

enum class Form {
  ScaledSolution,
  ScaledDensity,
};

/// Density mass outside [1 - kMassTolerance, 1 + kMassTolerance] is reported
/// as a warning.
inline constexpr double kMassTolerance = 1e-3;

/// Above this order the density is too peaked for the default panel count,
/// which is doubled.
inline constexpr double kNearOneAlpha = 0.95;

struct SubordinationRequest {
  TimeFunction solution;
  double alpha = 1.0;
  double t = 1.0;
  quad::QuadratureSpec quad;
  Form form = Form::ScaledSolution;
};

struct SubordinationResult {
  double value = 0.0;
  /// Int f_alpha over the truncated range with the same nodes as `value`.
  double density_mass_used = 1.0;
  std::vector<std::string> warnings;
};

/// Quadrature nodes on [0, density_cutoff(alpha)] with the weights already
/// multiplied by f_alpha. Immutable once built.
class DensityTable {
 public:
  DensityTable(double alpha, const quad::QuadratureSpec& quad = {}, const special::SeriesConfig& cfg = {});

  double alpha() const { return alpha_; }
  double cutoff() const { return cutoff_; }
  double mass() const { return mass_; }
  bool is_dirac() const { return alpha_ == 1.0; }
  std::span<const quad::Node> nodes() const { return nodes_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  /// Sum over nodes of w_i f_alpha(z_i) g(z_i), in node order.
  double integrate(const std::function<double(double)>& g) const;

 private:
  double alpha_;
  double cutoff_;
  double mass_ = 1.0;
  std::vector<quad::Node> nodes_;
  std::vector<std::string> warnings_;
};

/// Panel count actually used for a given order (doubled above kNearOneAlpha).
quad::QuadratureSpec effective_spec(double alpha, const quad::QuadratureSpec& quad);

SubordinationResult subordinate(const SubordinationRequest& req);

/// Scaled-solution form with a prebuilt table.
SubordinationResult subordinate(const DensityTable& table, const TimeFunction& solution, double t);

struct GridEntry {
  double t = 0.0;
  SubordinationResult result;
  std::optional<ErrorCode> error;
  std::string message;
};

/// One entry per t, in input order. Failures are recorded per entry.
std::vector<GridEntry> subordinate_grid(const TimeFunction& solution, double alpha, std::span<const double> t_grid,
                                        const quad::QuadratureSpec& quad = {});

using Kernel = std::function<double(double y, double t)>;

// Minimum grading toward z = 0 for kernel tables. Green's functions change on
// short time scales there (exp(-y^2/4z) for the heat kernel).
inline constexpr int kKernelGradingLevels = 40;

/// y -> t^{-alpha} Int f_alpha(t^{-alpha} z) G(y, z) dz for fixed alpha and t.
/// The returned callable shares one density table across calls. Its grading
/// is at least kKernelGradingLevels.
std::function<double(double)> subordinate_kernel(Kernel kernel, double alpha, double t,
                                                 const quad::QuadratureSpec& quad = {});

}  // namespace fracevo::subordination
