#include "fracevo/gamma.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace fracevo::special {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};
constexpr double kPoleTolerance = 1e-12;
// Gamma(x) overflows a double just above this.
constexpr double kGammaOverflow = 171.6;

double lanczos_sum(double xm1) noexcept {
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (xm1 + static_cast<double>(i));
  return a;
}

// log Gamma(x) for x >= 1/2.
double log_gamma_right(double x) noexcept {
  const double xm1 = x - 1.0;
  const double t = xm1 + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (xm1 + 0.5) * std::log(t) - t +
         std::log(lanczos_sum(xm1));
}

// Gamma(x) for 1/2 <= x < kGammaOverflow.
double gamma_right(double x) noexcept {
  const double xm1 = x - 1.0;
  const double t = xm1 + kLanczosG + 0.5;
  // Split the power so t^(x-1/2) does not overflow before e^{-t} is applied.
  const double half_power = std::pow(t, 0.5 * (xm1 + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_power * (half_power * std::exp(-t)) *
         lanczos_sum(xm1);
}

}  // namespace

double sin_pi(double x) noexcept {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  double r = std::fmod(x, 2.0);
  if (r < 0.0) r += 2.0;
  double sign = 1.0;
  if (r >= 1.0) {
    r -= 1.0;
    sign = -1.0;
  }
  if (r == 0.0) return 0.0;
  if (r > 0.5) r = 1.0 - r;
  return sign * std::sin(std::numbers::pi * r);
}

bool is_gamma_pole(double x) noexcept {
  return x <= 0.0 && std::abs(x - std::nearbyint(x)) < kPoleTolerance;
}

double gamma_function(double x) noexcept {
  if (std::isnan(x)) return x;
  if (is_gamma_pole(x)) return std::numeric_limits<double>::infinity();
  if (x >= 0.5) {
    if (x >= kGammaOverflow) return std::numeric_limits<double>::infinity();
    return gamma_right(x);
  }
  // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
  const double g = gamma_function(1.0 - x);
  return std::numbers::pi / (sin_pi(x) * g);
}

double log_abs_gamma(double x) noexcept {
  if (std::isnan(x)) return x;
  if (is_gamma_pole(x)) return std::numeric_limits<double>::infinity();
  if (x >= 0.5) return log_gamma_right(x);
  return std::log(std::numbers::pi) - std::log(std::abs(sin_pi(x))) - log_gamma_right(1.0 - x);
}

SignedLog reciprocal_gamma_log(double x) noexcept {
  if (is_gamma_pole(x)) return {-std::numeric_limits<double>::infinity(), 0};
  if (x >= 0.5) return {-log_gamma_right(x), 1};
  const double s = sin_pi(x);
  return {std::log(std::abs(s)) + log_gamma_right(1.0 - x) - std::log(std::numbers::pi),
          s > 0.0 ? 1 : -1};
}

double reciprocal_gamma(double x) noexcept {
  if (std::isnan(x)) return x;
  if (is_gamma_pole(x)) return 0.0;
  if (x >= 0.5) {
    if (x < kGammaOverflow) return 1.0 / gamma_right(x);
    return std::exp(-log_gamma_right(x));
  }
  // 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
  const double y = 1.0 - x;
  if (y < kGammaOverflow) return sin_pi(x) * gamma_right(y) / std::numbers::pi;
  const SignedLog l = reciprocal_gamma_log(x);
  return l.sign * std::exp(l.log_abs);
}

}  // namespace fracevo::special
