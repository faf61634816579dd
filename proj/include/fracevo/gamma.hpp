#pragma once

// Gamma-function family used by every power series in the library.
//
// All routines are double precision and built on a Lanczos approximation
// (g = 7, 9 coefficients) with the reflection formula for arguments below 1/2.
// The reciprocal form is total: it returns exactly 0 at the poles of Gamma,
// which is what lets the series drop their vanishing coefficients exactly.

namespace fracevo::special {

/// sin(pi x) with exact zeros at integers and argument reduction mod 2.
double sin_pi(double x) noexcept;

/// True when x <= 0 and x lies within 1e-12 of an integer.
bool is_gamma_pole(double x) noexcept;

/// Gamma(x). Returns +/-infinity at poles and on overflow.
double gamma_function(double x) noexcept;

/// log|Gamma(x)|. Returns +infinity at poles.
double log_abs_gamma(double x) noexcept;

/// 1/Gamma(x); exactly 0 at non-positive integers.
double reciprocal_gamma(double x) noexcept;

/// 1/Gamma(x) split as sign * exp(log_abs). sign == 0 at the poles.
/// Used where 1/Gamma over- or underflows but a product with other factors
/// does not.
struct SignedLog {
  double log_abs;
  int sign;
};
SignedLog reciprocal_gamma_log(double x) noexcept;

}  // namespace fracevo::special
