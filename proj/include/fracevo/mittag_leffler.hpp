#pragma once

// Generalized Mittag-Leffler functions F_{alpha,beta}(z) = Gamma(beta) E_{alpha,beta}(-z)
// on z >= 0 and the probability densities whose Laplace transforms they are.
//
// The defining power series is used wherever it is numerically sound. Both
// series alternate, and for moderate z the largest term exceeds the sum by
// many orders of magnitude, so every evaluation tracks the largest term and
// falls back to a non-cancelling representation once the loss would exceed
// kSeriesLossBudget:
//
//   * F_{alpha,beta}, alpha < 1: the large-z asymptotic expansion
//       Gamma(beta) * sum_{k>=1} (-1)^{k+1} z^{-k} / Gamma(beta - alpha k)
//     and, for beta = 1, the spectral integral
//       E_alpha(-z) = sin(alpha pi)/(alpha pi) * z * Int_0^inf exp(-v^{1/alpha}) / (v^2 + 2 z v cos(alpha pi) + z^2) dv.
//   * F_{1,beta}, beta > 1: Int_0^1 exp(-z (1 - w^{1/(beta-1)})) dw.
//   * f_alpha: the Zolotarev-type integral over phi in (0, pi) of a positive
//     integrand built from A(phi) = (sin(alpha phi)/sin phi)^{1/(1-alpha)} sin((1-alpha) phi)/sin(alpha phi).

#include <cstdint>
#include <string_view>

namespace fracevo::special {

struct MLParams {
  double alpha = 1.0;
  double beta = 1.0;

  /// 0 < alpha <= 1 and beta >= alpha; throws InvalidArgument otherwise.
  void validate() const;
};

struct SeriesConfig {
  double rel_tol = 1e-14;
  int max_terms = 500;

  void validate() const;
};

enum class EvalMethod : std::uint8_t {
  ClosedForm,
  Series,
  Asymptotic,
  Integral,
};

std::string_view to_string(EvalMethod m) noexcept;

struct EvalResult {
  double value = 0.0;
  int terms_used = 0;
  bool converged = false;
  EvalMethod method = EvalMethod::Series;
};

/// A series result is used only while its largest term stays within this
/// factor of the sum (at most ~2 digits lost to cancellation).
inline constexpr double kSeriesLossBudget = 1e2;

/// F_{alpha,beta}(z) = Gamma(beta) sum_k (-1)^k z^k / Gamma(beta + alpha k).
/// For beta != 1 with 0 < alpha < 1 there is no fallback between the range of
/// the series and of the asymptotic expansion; the best series estimate is
/// returned with converged = false there.
EvalResult ml_generalized(const MLParams& params, double z, const SeriesConfig& cfg = {});

/// E_alpha(-z); identical to ml_generalized with beta = 1.
EvalResult ml_standard(double alpha, double z, const SeriesConfig& cfg = {});

/// f_alpha(z) = sum_k (-1)^k z^k / (Gamma(1 - alpha - alpha k) k!), 0 < alpha < 1.
/// alpha = 1 is the Dirac mass at z = 1 and is rejected with DiracCase.
EvalResult ml_density(double alpha, double z, const SeriesConfig& cfg = {});

/// f_{alpha,beta}(x). For alpha = 1, beta > 1 the closed form
/// (beta - 1)(1 - x)^{beta - 2} on [0, 1] (zero beyond); (1, 1) throws DiracCase.
EvalResult ml_density_generalized(const MLParams& params, double x, const SeriesConfig& cfg = {});

/// Right cutoff for integrals against f_alpha: the mass of f_alpha beyond it
/// is below 1e-17. Equals 1 for alpha = 1.
double density_cutoff(double alpha);

}  // namespace fracevo::special
