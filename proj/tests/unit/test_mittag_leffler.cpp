#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fracevo/error.hpp"
#include "fracevo/mittag_leffler.hpp"
#include "fracevo/quadrature.hpp"
#include "oracles/reference_values.hpp"

using namespace fracevo;
using namespace fracevo::special;
namespace oracle = fracevo::oracle;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

// Closed forms at alpha = 1/2, evaluated with the C library's erfc.
double ml_half(double z) { return std::exp(z * z) * std::erfc(z); }
double density_half(double z) { return std::exp(-0.25 * z * z) / std::sqrt(std::numbers::pi); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected fracevo::Error");
  return ErrorCode::Unsupported;
}

quad::QuadratureSpec density_spec(double alpha) {
  quad::QuadratureSpec spec;
  spec.tail_cutoff = density_cutoff(alpha);
  return spec;
}

}  // namespace

TEST_CASE("generalized function examples") {
  CHECK(ml_generalized({1, 1}, 1).value == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(ml_generalized({1, 1}, 0).value == 1.0);
  CHECK(rel_err(ml_generalized({0.5, 1}, 1).value, oracle::kMlHalf1) < 1e-14);
  for (const auto& p : oracle::kMlGeneralized) {
    CAPTURE(p.alpha);
    CAPTURE(p.beta);
    CAPTURE(p.z);
    const EvalResult r = ml_generalized({p.alpha, p.beta}, p.z);
    CHECK(r.converged);
    CHECK(rel_err(r.value, p.value) < 1e-12);
  }
}

TEST_CASE("standard function examples") {
  CHECK(ml_standard(1, 2).value == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(ml_standard(0.7, 0).value == 1.0);
  CHECK(rel_err(ml_standard(0.5, 4).value, oracle::kMlHalf4) < 1e-12);
  CHECK(rel_err(ml_standard(0.5, 2).value, oracle::kMlHalf2) < 1e-13);
  for (const auto& p : oracle::kMlStandard) {
    CAPTURE(p.alpha);
    CAPTURE(p.z);
    const EvalResult r = ml_standard(p.alpha, p.z);
    CHECK(r.converged);
    CHECK(rel_err(r.value, p.value) < 1e-12);
  }
}

TEST_CASE("standard equals generalized with beta = 1 bit for bit") {
  for (double a : {0.2, 0.5, 0.75, 1.0})
    for (double z : {0.0, 0.3, 1.0, 2.5, 7.0, 30.0, 200.0}) {
      const EvalResult s = ml_standard(a, z);
      const EvalResult g = ml_generalized({a, 1.0}, z);
      CHECK(s.value == g.value);
      CHECK(s.terms_used == g.terms_used);
      CHECK(s.method == g.method);
    }
}

TEST_CASE("exponential case") {
  const SeriesConfig cfg;
  for (double z = 0; z <= 20.0; z += 0.125)
    CHECK(std::abs(ml_generalized({1, 1}, z, cfg).value - std::exp(-z)) <= 10 * cfg.rel_tol * std::exp(-z));
}

TEST_CASE("half-order closed forms") {
  for (double z = 0; z <= 6.0; z += 0.05) CHECK(std::abs(ml_density(0.5, z).value - density_half(z)) <= 1e-10);
  for (double z = 0; z <= 4.0; z += 0.05) CHECK(std::abs(ml_standard(0.5, z).value - ml_half(z)) <= 1e-9);
}

TEST_CASE("density examples") {
  CHECK(std::abs(ml_density(0.5, 1).value - density_half(1)) < 1e-15);
  CHECK(rel_err(ml_density(0.5, 0).value, oracle::kRgammaHalf) < 1e-15);
  CHECK(rel_err(ml_density(0.3, 0).value, oracle::kRgamma0p7) < 1e-14);
  for (const auto& p : oracle::kDensity) {
    CAPTURE(p.alpha);
    CAPTURE(p.z);
    const EvalResult r = ml_density(p.alpha, p.z);
    CHECK(r.converged);
    // Relative accuracy where the density is macroscopic, absolute below.
    CHECK(std::abs(r.value - p.value) <= 1e-12 * std::max(std::abs(p.value), 1e-3));
  }
  CHECK(code_of([] { ml_density(1.0, 1.0); }) == ErrorCode::DiracCase);
}

TEST_CASE("generalized density") {
  CHECK(ml_density_generalized({1, 2}, 0.5).value == 1.0);
  CHECK(ml_density_generalized({1, 3}, 2).value == 0.0);
  CHECK(ml_density_generalized({1, 3}, 0.25).value == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(ml_density_generalized({0.5, 0.5}, 0).value == 0.0);
  for (const auto& p : oracle::kDensityGeneralized)
    CHECK(rel_err(ml_density_generalized({p.alpha, p.beta}, p.z).value, p.value) < 1e-13);
  // beta = 1 reduces to f_alpha.
  CHECK(ml_density_generalized({0.4, 1}, 1.3).value == doctest::Approx(ml_density(0.4, 1.3).value).epsilon(1e-14));
  CHECK(code_of([] { ml_density_generalized({1, 1}, 1); }) == ErrorCode::DiracCase);
}

TEST_CASE("density is nonnegative") {
  for (double a : {0.1, 0.25, 0.3, 0.5, 0.7, 0.8, 0.9, 0.95}) {
    const double zc = density_cutoff(a);
    for (int i = 0; i <= 400; ++i) {
      const double z = zc * i / 400.0;
      CHECK(ml_density(a, z).value >= -1e-12);
    }
  }
}

TEST_CASE("density normalization") {
  for (double a : {0.3, 0.5, 0.7, 0.9}) {
    const double mass = quad::integrate_halfline([a](double z) { return ml_density(a, z).value; }, density_spec(a));
    CAPTURE(a);
    CHECK(std::abs(mass - 1.0) < 1e-8);
  }
}

TEST_CASE("Laplace transform of the density") {
  for (double a : {0.3, 0.5, 0.7})
    for (double p : {0.5, 1.0, 2.0, 5.0}) {
      const double lt = quad::integrate_halfline(
          [a, p](double z) { return std::exp(-p * z) * ml_density(a, z).value; }, density_spec(a));
      CAPTURE(a);
      CAPTURE(p);
      CHECK(std::abs(lt - ml_standard(a, p).value) < 1e-8);
    }
}

TEST_CASE("E_alpha(-z) decreases strictly") {
  for (double a : {0.2, 0.5, 0.8, 0.95, 1.0}) {
    double prev = ml_standard(a, 0).value;
    for (double z = 0.25; z <= 60.0; z += 0.25) {
      const double v = ml_standard(a, z).value;
      CAPTURE(a);
      CAPTURE(z);
      CHECK(v < prev);
      prev = v;
    }
  }
}

TEST_CASE("the cutoff leaves negligible mass") {
  CHECK(density_cutoff(1.0) == 1.0);
  for (double a : {0.2, 0.5, 0.9}) {
    const double zc = density_cutoff(a);
    CHECK(zc > 1.0);
    CHECK(ml_density(a, zc).value < 1e-16);
  }
  CHECK(density_cutoff(0.9) < density_cutoff(0.5));
}

TEST_CASE("non-convergence is reported, not thrown") {
  SeriesConfig tight;
  tight.max_terms = 8;
  // beta != 1 between the series and the asymptotic range has no fallback.
  const EvalResult r = ml_generalized({0.5, 2.0}, 0.9, tight);
  CHECK_FALSE(r.converged);
  CHECK(std::isfinite(r.value));
  CHECK(r.terms_used <= 8);
}

TEST_CASE("parameter validation") {
  CHECK(code_of([] { ml_standard(0.0, 1.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { ml_standard(1.5, 1.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { ml_standard(0.5, -1.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { ml_generalized({0.5, 0.2}, 1.0); }) == ErrorCode::InvalidArgument);
  SeriesConfig bad;
  bad.rel_tol = 0;
  CHECK(code_of([&] { ml_standard(0.5, 1.0, bad); }) == ErrorCode::InvalidArgument);
  CHECK(to_string(EvalMethod::Asymptotic) == "asymptotic");
}
