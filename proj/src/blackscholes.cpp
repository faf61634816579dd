#include "fracevo/blackscholes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracevo/error.hpp"
#include "fracevo/transforms.hpp"

namespace fracevo::blackscholes {

namespace {

void require_positive(double x, const char* what) {
  require(std::isfinite(x) && x > 0.0, std::string(what) + " must be positive");
}

void require_alpha(double alpha, const char* what) {
  require(std::isfinite(alpha) && alpha > 0.0 && alpha <= 1.0, std::string(what) + ": alpha must satisfy 0 < alpha <= 1");
}

void require_lambda(double lambda0, const char* what) {
  require(std::isfinite(lambda0) && lambda0 >= 0.0, std::string(what) + ": lambda0 must be non-negative");
}

quad::QuadratureSpec graded(const quad::QuadratureSpec& quad) {
  quad::QuadratureSpec spec = quad;
  spec.grading_levels = std::max(spec.grading_levels, kSmallTimeGradingLevels);
  return spec;
}

}  // namespace

void OptionSpec::validate() const {
  require_positive(spot, "OptionSpec: spot");
  require_positive(strike, "OptionSpec: strike");
  require(std::isfinite(rate) && rate >= 0.0, "OptionSpec: rate must be non-negative");
  require_positive(volatility, "OptionSpec: volatility");
  require_positive(expiry, "OptionSpec: expiry");
}

TransformedCoords to_transformed(const OptionSpec& opt, double t) {
  opt.validate();
  require(std::isfinite(t) && t <= opt.expiry, "to_transformed: t must not exceed the expiry");
  const double var = opt.volatility * opt.volatility;
  return {0.5 * var * (opt.expiry - t), 2.0 * opt.rate / var};
}

double payoff(double S, double E) {
  require_positive(S, "payoff: S");
  require_positive(E, "payoff: E");
  return std::max(S - E, 0.0);
}

double normal_cdf(double d) { return 0.5 * std::erfc(-d / std::numbers::sqrt2); }

double bs_price(double S, double E, const TransformedCoords& coords) {
  require_positive(S, "bs_price: S");
  require_positive(E, "bs_price: E");
  require(std::isfinite(coords.tau) && coords.tau >= 0.0, "bs_price: tau must be non-negative");
  require_lambda(coords.lambda0, "bs_price");
  if (coords.tau == 0.0) return payoff(S, E);
  const double tau = coords.tau;
  const double lambda0 = coords.lambda0;
  const double root = std::sqrt(2.0 * tau);
  const double m = std::log(S / E);
  const double d1 = (m + (lambda0 + 1.0) * tau) / root;
  const double d2 = (m + (lambda0 - 1.0) * tau) / root;
  const double discounted = E * std::exp(-lambda0 * tau);
  const double value = S * normal_cdf(d1) - discounted * normal_cdf(d2);
  return std::clamp(value, std::max(S - discounted, 0.0), S);
}

subordination::SubordinationResult frac_bs_price(double S, double E, double alpha, double tau, double lambda0,
                                                 const quad::QuadratureSpec& quad) {
  require_positive(S, "frac_bs_price: S");
  require_positive(E, "frac_bs_price: E");
  require_alpha(alpha, "frac_bs_price");
  require(std::isfinite(tau) && tau >= 0.0, "frac_bs_price: tau must be non-negative");
  require_lambda(lambda0, "frac_bs_price");
  const transforms::TimeFunction price{[=](double z) { return bs_price(S, E, {z, lambda0}); }, "call price"};
  return subordination::subordinate(subordination::SubordinationRequest{price, alpha, tau, graded(quad)});
}

ResidualReport integral_equation_residual(const PriceFunction& price, double S, double E, double alpha,
                                          std::span<const double> tau_grid, double lambda0,
                                          const quad::QuadratureSpec& quad) {
  require(static_cast<bool>(price), "integral_equation_residual: price function has no callable");
  require_positive(S, "integral_equation_residual: S");
  require_positive(E, "integral_equation_residual: E");
  require_alpha(alpha, "integral_equation_residual");
  require_lambda(lambda0, "integral_equation_residual");
  require(!tau_grid.empty(), "integral_equation_residual: tau_grid is empty");
  for (double tau : tau_grid) require_positive(tau, "integral_equation_residual: every tau");

  const double h1 = kFirstDerivativeStep * S;
  const double h2 = kSecondDerivativeStep * S;
  // Central differences at h and h/2 combined by one Richardson step, so the
  // truncation error is O(h^4).
  const auto first = [&](double z, double h) { return (price(S + h, z) - price(S - h, z)) / (2.0 * h); };
  const auto second = [&](double z, double a, double h) {
    return (price(S + h, z) - 2.0 * a + price(S - h, z)) / (h * h);
  };
  const transforms::TimeFunction generator{
      [&](double z) {
        const double a = price(S, z);
        const double a_s = (4.0 * first(z, 0.5 * h1) - first(z, h1)) / 3.0;
        const double a_ss = (4.0 * second(z, a, 0.5 * h2) - second(z, a, h2)) / 3.0;
        return S * S * a_ss + lambda0 * S * a_s - lambda0 * a;
      },
      "pricing generator"};

  ResidualReport report;
  const double initial = payoff(S, E);
  for (double tau : tau_grid) {
    const double integral = transforms::riemann_liouville(generator, alpha, tau, quad);
    const double residual = std::abs(price(S, tau) - initial - integral);
    report.residuals.push_back(residual);
    report.max_residual = std::max(report.max_residual, residual);
  }
  return report;
}

ResidualReport frac_bs_residual(double S, double E, double alpha, std::span<const double> tau_grid, double lambda0,
                                const quad::QuadratureSpec& quad) {
  require_positive(S, "frac_bs_residual: S");
  require_positive(E, "frac_bs_residual: E");
  require_alpha(alpha, "frac_bs_residual");
  require_lambda(lambda0, "frac_bs_residual");
  const bool on_kink = std::abs(std::log(S / E)) < kKinkLogMoneyness;
  if (on_kink && std::any_of(tau_grid.begin(), tau_grid.end(), [](double tau) { return tau < kKinkMinTau; }))
    throw Error(ErrorCode::KinkRefused, "frac_bs_residual: tau < 0.01 with S near E, second derivative is singular");

  const subordination::DensityTable table(alpha, graded(quad));
  const PriceFunction price = [&](double s, double tau) {
    const transforms::TimeFunction curve{[&](double z) { return bs_price(s, E, {z, lambda0}); }, "call price"};
    return subordination::subordinate(table, curve, tau).value;
  };
  ResidualReport report = integral_equation_residual(price, S, E, alpha, tau_grid, lambda0, quad);
  if (on_kink) report.warnings.push_back("KinkWarning: |ln(S/E)| < 0.05, finite differences straddle the payoff kink");
  return report;
}

}  // namespace fracevo::blackscholes
