#pragma once

// European call pricing in the rescaled variables
//   tau = sigma^2 (T - t) / 2,   lambda0 = 2 r / sigma^2,
// in which the pricing equation is the forward evolution
//   A_tau = S^2 A_SS + lambda0 S A_S - lambda0 A,   A(S, 0) = max(S - E, 0),
// and its fractional extension A_alpha obtained by subordination.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fracevo/quadrature.hpp"
#include "fracevo/subordination.hpp"

namespace fracevo::blackscholes {

struct OptionSpec {
  double spot = 100.0;
  double strike = 100.0;
  double rate = 0.0;
  double volatility = 0.2;
  double expiry = 1.0;

  void validate() const;
};

struct TransformedCoords {
  double tau = 0.0;
  double lambda0 = 0.0;
};

/// Requires t <= expiry.
TransformedCoords to_transformed(const OptionSpec& opt, double t);

double payoff(double S, double E);

/// Standard normal CDF as erfc(-d/sqrt 2)/2.
double normal_cdf(double d);

/// S N(d1) - E e^{-lambda0 tau} N(d2), d_{1,2} = (ln(S/E) + (lambda0 +/- 1) tau)/sqrt(2 tau).
/// tau = 0 gives the payoff. The result is clamped to [max(S - E e^{-lambda0 tau}, 0), S]
/// to remove rounding outside the no-arbitrage band.
double bs_price(double S, double E, const TransformedCoords& coords);

/// Minimum grading depth toward z = 0 of the density table used for prices.
/// For small tau^alpha the price A(S, tau^alpha z) - payoff varies on a scale
/// of z far below one uniform panel.
inline constexpr int kSmallTimeGradingLevels = 20;

subordination::SubordinationResult frac_bs_price(double S, double E, double alpha, double tau, double lambda0,
                                                 const quad::QuadratureSpec& quad = {});

/// Base central-difference steps of the residual check, relative to S.
/// Each derivative is Richardson-extrapolated from steps h and h/2.
inline constexpr double kFirstDerivativeStep = 1e-4;
inline constexpr double kSecondDerivativeStep = 1e-3;
/// |ln(S/E)| below this is treated as sitting on the payoff kink.
inline constexpr double kKinkLogMoneyness = 0.05;
/// Smallest tau allowed on the kink.
inline constexpr double kKinkMinTau = 0.01;

struct ResidualReport {
  double max_residual = 0.0;
  std::vector<double> residuals;
  std::vector<std::string> warnings;
};

/// Price surface A_alpha(S, tau) for the residual assembler.
using PriceFunction = std::function<double(double S, double tau)>;

/// max over tau of
///   |A_alpha(S, tau) - payoff(S, E) - I^alpha[S^2 A_SS + lambda0 S A_S - lambda0 A](tau)|
/// with S-derivatives by extrapolated central differences and I^alpha the
/// Riemann-Liouville integral in tau.
ResidualReport integral_equation_residual(const PriceFunction& price, double S, double E, double alpha,
                                          std::span<const double> tau_grid, double lambda0,
                                          const quad::QuadratureSpec& quad = {});

/// integral_equation_residual for the subordinated price. Throws KinkRefused
/// when the grid mixes tau < kKinkMinTau with |ln(S/E)| < kKinkLogMoneyness.
ResidualReport frac_bs_residual(double S, double E, double alpha, std::span<const double> tau_grid, double lambda0,
                                const quad::QuadratureSpec& quad = {});

}  // namespace fracevo::blackscholes
