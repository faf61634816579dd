#include "fracevo/mittag_leffler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fracevo/error.hpp"
#include "fracevo/gamma.hpp"
#include "fracevo/quadrature.hpp"

namespace fracevo::special {

void MLParams::validate() const {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 1.0, "MLParams: alpha must satisfy 0 < alpha <= 1");
  require(std::isfinite(beta) && beta >= alpha, "MLParams: beta must satisfy beta >= alpha");
}

void SeriesConfig::validate() const {
  require(rel_tol > 0.0 && std::isfinite(rel_tol), "SeriesConfig: rel_tol must be positive");
  require(max_terms >= 8, "SeriesConfig: max_terms must be at least 8");
}

std::string_view to_string(EvalMethod m) noexcept {
  switch (m) {
    case EvalMethod::ClosedForm: return "closed_form";
    case EvalMethod::Series: return "series";
    case EvalMethod::Asymptotic: return "asymptotic";
    case EvalMethod::Integral: return "integral";
  }
  return "unknown";
}

namespace {

struct SeriesSum {
  double sum = 0.0;
  int terms = 0;
  bool converged = false;
  double max_term = 0.0;
};

// Sums sign * exp(log_abs) for k = first, first + 1, ... with the
// two-consecutive-small-terms stopping rule.
template <class Term>
SeriesSum sum_series(Term term, const SeriesConfig& cfg, int first = 0) {
  SeriesSum s;
  int small_run = 0;
  for (int k = first; k < first + cfg.max_terms; ++k) {
    const SignedLog t = term(k);
    const double value = t.sign == 0 ? 0.0 : t.sign * std::exp(t.log_abs);
    s.sum += value;
    ++s.terms;
    s.max_term = std::max(s.max_term, std::abs(value));
    if (std::abs(value) < cfg.rel_tol * std::max(std::abs(s.sum), 1e-300)) {
      if (++small_run >= 2) {
        s.converged = true;
        break;
      }
    } else {
      small_run = 0;
    }
  }
  return s;
}

bool reliable(const SeriesSum& s) {
  return s.converged && std::isfinite(s.sum) && s.max_term <= kSeriesLossBudget * std::abs(s.sum);
}

double log_factorial(int k) { return log_abs_gamma(static_cast<double>(k) + 1.0); }

double integral_tolerance(const SeriesConfig& cfg) { return std::max(cfg.rel_tol, 5e-14); }

// Asymptotic expansion of Gamma(beta) E_{alpha,beta}(-z), 0 < alpha < 1.
// Accepted only if the terms fall below tolerance before they start growing.
SeriesSum asymptotic(double alpha, double beta, double z, const SeriesConfig& cfg) {
  const double log_z = std::log(z);
  const double log_gamma_beta = log_abs_gamma(beta);
  SeriesSum s;
  double last_nonzero = 0.0;
  int small_run = 0;
  for (int k = 1; k <= cfg.max_terms; ++k) {
    const SignedLog rg = reciprocal_gamma_log(beta - alpha * k);
    double value = 0.0;
    if (rg.sign != 0) {
      const int sign = (k % 2 == 1 ? 1 : -1) * rg.sign;
      value = sign * std::exp(-k * log_z + log_gamma_beta + rg.log_abs);
    }
    ++s.terms;
    if (value != 0.0) {
      if (last_nonzero != 0.0 && std::abs(value) > std::abs(last_nonzero) && small_run == 0) return s;
      last_nonzero = value;
    }
    s.sum += value;
    s.max_term = std::max(s.max_term, std::abs(value));
    if (std::abs(value) < cfg.rel_tol * std::max(std::abs(s.sum), 1e-300)) {
      if (++small_run >= 2) {
        s.converged = true;
        return s;
      }
    } else {
      small_run = 0;
    }
  }
  return s;
}

void add_breakpoint(std::vector<double>& pts, double x, double lo, double hi) {
  if (std::isfinite(x) && x > lo && x < hi) pts.push_back(x);
}

std::vector<double> finalize(std::vector<double> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// E_alpha(-z) for 0 < alpha < 1, z > 0, through the spectral integral.
EvalResult spectral_ml(double alpha, double z, const SeriesConfig& cfg) {
  const double c = sin_pi(alpha + 0.5);  // cos(alpha pi)
  const double sa = sin_pi(alpha);
  const double inv_alpha = 1.0 / alpha;
  const double v_max = std::pow(80.0, alpha);
  auto integrand = [=](double v) {
    const double d = v + c * z;
    return std::exp(-std::pow(v, inv_alpha)) / (d * d + z * z * sa * sa);
  };
  std::vector<double> pts{0.0, v_max};
  const double peak = c < 0.0 ? -c * z : 0.0;
  add_breakpoint(pts, peak, 0.0, v_max);
  add_breakpoint(pts, peak - z * sa, 0.0, v_max);
  add_breakpoint(pts, peak + z * sa, 0.0, v_max);
  add_breakpoint(pts, z, 0.0, v_max);
  add_breakpoint(pts, 1.0, 0.0, v_max);
  pts = finalize(std::move(pts));
  const quad::AdaptiveResult r = quad::gauss_kronrod(integrand, pts, 0.0, integral_tolerance(cfg));
  EvalResult out;
  out.value = sa / (alpha * std::numbers::pi) * z * r.value;
  out.terms_used = static_cast<int>(r.evaluations);
  out.converged = r.converged;
  out.method = EvalMethod::Integral;
  return out;
}

// F_{1,beta}(z), beta > 1: Laplace transform of (beta-1)(1-x)^{beta-2} on [0,1].
EvalResult beta_kernel_integral(double beta, double z, const SeriesConfig& cfg) {
  const double p = 1.0 / (beta - 1.0);
  auto integrand = [=](double w) { return std::exp(-z * (1.0 - std::pow(w, p))); };
  std::vector<double> pts{0.0, 0.5, 0.9, 0.99, 0.999, 1.0};
  const quad::AdaptiveResult r = quad::gauss_kronrod(integrand, pts, 0.0, integral_tolerance(cfg));
  return {r.value, static_cast<int>(r.evaluations), r.converged, EvalMethod::Integral};
}

// f_alpha(z), 0 < alpha < 1, z > 0, through the Zolotarev-type integral.
EvalResult density_integral(double alpha, double z, const SeriesConfig& cfg) {
  const double one_minus = 1.0 - alpha;
  const double log_z = std::log(z);
  const double log_prefactor = alpha / one_minus * log_z;
  const double scale = std::exp(log_z / one_minus);
  auto integrand = [=](double phi) {
    const double s_a = std::sin(alpha * phi);
    const double log_a =
        (std::log(s_a) - std::log(std::sin(phi))) / one_minus + std::log(std::sin(one_minus * phi)) - std::log(s_a);
    const double a = std::exp(log_a);
    const double exponent = log_prefactor + log_a - scale * a;
    return exponent < -745.0 ? 0.0 : std::exp(exponent);
  };
  std::vector<double> pts{0.0, std::numbers::pi};
  for (int j = 1; j <= 12; ++j) {
    const double d = std::numbers::pi * std::ldexp(1.0, -j);
    pts.push_back(d);
    pts.push_back(std::numbers::pi - d);
  }
  pts = finalize(std::move(pts));
  const quad::AdaptiveResult r = quad::gauss_kronrod(integrand, pts, 1e-300, integral_tolerance(cfg));
  EvalResult out;
  out.value = r.value / (one_minus * std::numbers::pi);
  out.terms_used = static_cast<int>(r.evaluations);
  out.converged = r.converged;
  out.method = EvalMethod::Integral;
  return out;
}

EvalResult from_series(const SeriesSum& s, double factor = 1.0) {
  return {factor * s.sum, s.terms, s.converged, EvalMethod::Series};
}

void require_argument(double z, const char* what) {
  require(std::isfinite(z) && z >= 0.0, std::string(what) + ": argument must be finite and non-negative");
}

}  // namespace

EvalResult ml_generalized(const MLParams& params, double z, const SeriesConfig& cfg) {
  params.validate();
  cfg.validate();
  require_argument(z, "ml_generalized");
  const double alpha = params.alpha;
  const double beta = params.beta;
  if (z == 0.0) return {1.0, 1, true, EvalMethod::Series};
  if (alpha == 1.0 && beta == 1.0) return {std::exp(-z), 1, true, EvalMethod::ClosedForm};

  const double log_z = std::log(z);
  const double log_gamma_beta = log_abs_gamma(beta);
  const SeriesSum series = sum_series(
      [&](int k) {
        const SignedLog rg = reciprocal_gamma_log(beta + alpha * k);
        return SignedLog{k * log_z + log_gamma_beta + rg.log_abs, (k % 2 == 0 ? 1 : -1) * rg.sign};
      },
      cfg);
  if (reliable(series)) return from_series(series);

  if (alpha < 1.0 && z >= 1.0) {
    const SeriesSum asym = asymptotic(alpha, beta, z, cfg);
    if (reliable(asym)) return {asym.sum, asym.terms, true, EvalMethod::Asymptotic};
  }
  if (alpha < 1.0 && beta == 1.0) return spectral_ml(alpha, z, cfg);
  if (alpha == 1.0) return beta_kernel_integral(beta, z, cfg);

  EvalResult best = from_series(series);
  best.converged = false;
  return best;
}

EvalResult ml_standard(double alpha, double z, const SeriesConfig& cfg) {
  return ml_generalized(MLParams{alpha, 1.0}, z, cfg);
}

EvalResult ml_density(double alpha, double z, const SeriesConfig& cfg) {
  if (alpha == 1.0) throw Error(ErrorCode::DiracCase, "ml_density: alpha = 1 is the Dirac mass at z = 1");
  require(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0, "ml_density: alpha must satisfy 0 < alpha < 1");
  cfg.validate();
  require_argument(z, "ml_density");
  if (z == 0.0) return {reciprocal_gamma(1.0 - alpha), 1, true, EvalMethod::Series};

  const double log_z = std::log(z);
  const SeriesSum series = sum_series(
      [&](int k) {
        const SignedLog rg = reciprocal_gamma_log(1.0 - alpha - alpha * k);
        return SignedLog{k * log_z - log_factorial(k) + rg.log_abs, (k % 2 == 0 ? 1 : -1) * rg.sign};
      },
      cfg);
  if (reliable(series)) return from_series(series);
  return density_integral(alpha, z, cfg);
}

EvalResult ml_density_generalized(const MLParams& params, double x, const SeriesConfig& cfg) {
  params.validate();
  cfg.validate();
  require_argument(x, "ml_density_generalized");
  const double alpha = params.alpha;
  const double beta = params.beta;
  if (alpha == 1.0) {
    if (beta == 1.0)
      throw Error(ErrorCode::DiracCase, "ml_density_generalized: (alpha, beta) = (1, 1) is the Dirac mass at 1");
    const double value = x <= 1.0 ? (beta - 1.0) * std::pow(1.0 - x, beta - 2.0) : 0.0;
    return {value, 1, true, EvalMethod::ClosedForm};
  }
  if (beta == 1.0) return ml_density(alpha, x, cfg);

  const double log_gamma_beta = log_abs_gamma(beta);
  if (x == 0.0) {
    const SignedLog rg = reciprocal_gamma_log(beta - alpha);
    return {rg.sign == 0 ? 0.0 : rg.sign * std::exp(log_gamma_beta + rg.log_abs), 1, true, EvalMethod::Series};
  }
  const double log_x = std::log(x);
  const SeriesSum series = sum_series(
      [&](int k) {
        const SignedLog rg = reciprocal_gamma_log(beta - alpha - alpha * k);
        return SignedLog{k * log_x - log_factorial(k) + log_gamma_beta + rg.log_abs,
                         (k % 2 == 0 ? 1 : -1) * rg.sign};
      },
      cfg);
  EvalResult out = from_series(series);
  out.converged = reliable(series);
  return out;
}

double density_cutoff(double alpha) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 1.0, "density_cutoff: alpha must satisfy 0 < alpha <= 1");
  if (alpha == 1.0) return 1.0;
  // f_alpha(z) ~ exp(-b z^{1/(1-alpha)}) for large z; cut where the exponent reaches 40.
  const double b = (1.0 - alpha) * std::pow(alpha, alpha / (1.0 - alpha));
  return std::pow(40.0 / b, 1.0 - alpha);
}

}  // namespace fracevo::special
