#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fracevo/blackscholes.hpp"
#include "fracevo/error.hpp"
#include "fracevo/mittag_leffler.hpp"
#include "oracles/reference_values.hpp"

using namespace fracevo;
using namespace fracevo::blackscholes;
namespace oracle = fracevo::oracle;

namespace {

// Call price in calendar variables, written out independently of the library.
double textbook_call(double S, double K, double r, double sigma, double T) {
  const auto N = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
  const double vt = sigma * std::sqrt(T);
  const double d1 = (std::log(S / K) + (r + 0.5 * sigma * sigma) * T) / vt;
  return S * N(d1) - K * std::exp(-r * T) * N(d1 - vt);
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected fracevo::Error");
  return ErrorCode::Unsupported;
}

}  // namespace

TEST_CASE("transformed coordinates") {
  TransformedCoords c = to_transformed({100, 100, 0.02, 0.2, 1.0}, 0.0);
  CHECK(c.tau == doctest::Approx(0.02).epsilon(1e-15));
  CHECK(c.lambda0 == doctest::Approx(1.0).epsilon(1e-15));
  c = to_transformed({100, 100, 0.08, 0.4, 0.5}, 0.5);
  CHECK(c.tau == 0.0);
  CHECK(c.lambda0 == doctest::Approx(1.0).epsilon(1e-15));
  c = to_transformed({100, 100, 0.0, 0.3, 2.0}, 0.0);
  CHECK(c.tau == doctest::Approx(0.09).epsilon(1e-15));
  CHECK(c.lambda0 == 0.0);
  CHECK(code_of([] { to_transformed({100, 100, 0.02, 0.2, 1.0}, 1.5); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { to_transformed({100, 100, -0.02, 0.2, 1.0}, 0.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { to_transformed({100, 100, 0.02, 0.0, 1.0}, 0.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("payoff") {
  CHECK(payoff(100, 90) == 10);
  CHECK(payoff(80, 90) == 0);
  CHECK(payoff(90, 90) == 0);
  CHECK(code_of([] { payoff(0, 90); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("normal distribution function") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(normal_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-15));
  CHECK(normal_cdf(-5.0) == doctest::Approx(2.866515718791939e-07).epsilon(1e-14));
  // Far tail keeps relative accuracy.
  CHECK(normal_cdf(-30.0) > 0.0);
  for (double d : {0.1, 1.7, 4.2}) CHECK(normal_cdf(d) + normal_cdf(-d) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("closed-form price examples") {
  CHECK(bs_price(105, 100, {0.0, 1.0}) == 5.0);
  CHECK(bs_price(95, 100, {0.0, 1.0}) == 0.0);
  const double deep = bs_price(100, 1e-9, {0.02, 1.0});
  CHECK(deep == doctest::Approx(100 - 1e-9 * std::exp(-0.02)).epsilon(1e-15));
  const double atm = bs_price(100, 100, {0.02, 1.0});
  CHECK(std::abs(atm - oracle::kCallAtm) < 1e-12);
  CHECK(std::abs(atm - textbook_call(100, 100, 0.02, 0.2, 1.0)) < 1e-10);
}

TEST_CASE("both parameterizations agree") {
  for (double sigma : {0.1, 0.25, 0.5})
    for (double r : {0.0, 0.03, 0.08})
      for (double T : {0.25, 1.0, 3.0}) {
        const TransformedCoords c = to_transformed({105, 100, r, sigma, T}, 0.0);
        CAPTURE(sigma);
        CAPTURE(r);
        CAPTURE(T);
        CHECK(std::abs(bs_price(105, 100, c) - textbook_call(105, 100, r, sigma, T)) < 1e-10);
      }
}

TEST_CASE("closed-form price stays inside the no-arbitrage band") {
  for (double S : {20.0, 80.0, 100.0, 130.0, 1000.0})
    for (double tau : {1e-8, 0.01, 0.5, 5.0})
      for (double lambda0 : {0.0, 1.0, 4.0}) {
        const double v = bs_price(S, 100, {tau, lambda0});
        CHECK(v >= std::max(S - 100 * std::exp(-lambda0 * tau), 0.0));
        CHECK(v <= S);
      }
}

TEST_CASE("fractional price") {
  SUBCASE("order one is the closed form bit for bit") {
    CHECK(frac_bs_price(100, 100, 1.0, 0.02, 1.0).value == bs_price(100, 100, {0.02, 1.0}));
    CHECK(frac_bs_price(87, 100, 1.0, 0.3, 0.0).value == bs_price(87, 100, {0.3, 0.0}));
  }
  SUBCASE("vanishing strike follows the Mittag-Leffler discount") {
    const double S = 100, E = 1e-6, tau = 0.02, alpha = 0.5;
    const auto r = frac_bs_price(S, E, alpha, tau, 1.0);
    const double discount = special::ml_standard(alpha, std::pow(tau, alpha)).value;
    CHECK(std::abs((S * r.density_mass_used - r.value) / E - discount) < 1e-6);
  }
  SUBCASE("deep in the money at zero rate") {
    CHECK(std::abs(frac_bs_price(100, 1, 0.5, 0.02, 0.0).value - 99.0) < 1e-3);
  }
  SUBCASE("no-arbitrage bounds") {
    const quad::QuadratureSpec spec;
    for (double alpha : {0.3, 0.5, 0.8})
      for (double tau : {0.01, 0.1, 1.0})
        for (double S : {80.0, 100.0, 125.0}) {
          const double v = frac_bs_price(S, 100, alpha, tau, 1.0).value;
          CHECK(v >= payoff(S, 100) - spec.abs_tol);
          CHECK(v <= S + spec.abs_tol);
        }
  }
  SUBCASE("increasing in the spot") {
    for (double alpha : {0.4, 0.7}) {
      double prev = -1.0;
      for (double S = 60; S <= 160; S += 5) {
        const double v = frac_bs_price(S, 100, alpha, 0.1, 1.0).value;
        CHECK(v > prev);
        prev = v;
      }
    }
  }
  SUBCASE("continuity as tau goes to zero") {
    for (double ratio : {0.8, 1.2})
      for (double alpha : {0.5, 0.9}) {
        CAPTURE(ratio);
        CAPTURE(alpha);
        const double S = 100 * ratio;
        // The effective time is tau^a z, so a = 1/2 needs a smaller tau than
        // a = 0.9 for the same gap.
        const double tau = alpha < 0.75 ? 1e-8 : 1e-6;
        CHECK(std::abs(frac_bs_price(S, 100, alpha, tau, 0.0).value - payoff(S, 100)) < 1e-3);
        // With a positive rate the strike is discounted by E_a(-tau^a), which
        // departs from one like tau^a/Gamma(1+a): about 1.1e-3 of the strike at
        // a = 1/2, so the gap to the payoff closes only at that rate.
        const double gap = std::abs(frac_bs_price(S, 100, alpha, 1e-6, 1.0).value - payoff(S, 100));
        const double discount_gap = 100 * std::pow(1e-6, alpha) / std::tgamma(1 + alpha);
        CHECK(gap < 1.1 * discount_gap + 1e-3);
      }
    const double half_gap = frac_bs_price(120, 100, 0.5, 1e-6, 0.0).value - 20.0;
    CHECK(std::abs(half_gap - oracle::kSmallTauGapHalf) < 1e-9);
  }
  SUBCASE("tau = 0 is the payoff") {
    CHECK(frac_bs_price(120, 100, 0.5, 0.0, 1.0).value == 20.0);
  }
}

TEST_CASE("integral-equation residual") {
  const std::vector<double> taus{0.05, 0.1};
  SUBCASE("classical equation at order one") {
    const ResidualReport r = frac_bs_residual(110, 100, 1.0, taus, 1.0);
    CHECK(r.max_residual < 1e-5);
    CHECK(r.residuals.size() == 2);
    CHECK(r.warnings.empty());
  }
  SUBCASE("half order") {
    CHECK(frac_bs_residual(120, 100, 0.5, taus, 1.0).max_residual < 1e-3);
  }
  SUBCASE("a price that ignores the equation is caught") {
    const PriceFunction wrong = [](double S, double tau) { return bs_price(S, 100, {2 * tau, 1.0}); };
    CHECK(integral_equation_residual(wrong, 110, 100, 1.0, taus, 1.0).max_residual > 1e-2);
  }
  SUBCASE("constant surface") {
    const double c = payoff(120, 100);
    const PriceFunction flat = [c](double, double) { return c; };
    CHECK(integral_equation_residual(flat, 120, 100, 0.5, taus, 0.0).max_residual == 0.0);
  }
  SUBCASE("the payoff kink") {
    const std::vector<double> early{0.005, 0.05};
    CHECK(code_of([&] { frac_bs_residual(101, 100, 0.5, early, 1.0); }) == ErrorCode::KinkRefused);
    const std::vector<double> later{0.05};
    const ResidualReport r = frac_bs_residual(101, 100, 1.0, later, 1.0);
    REQUIRE_FALSE(r.warnings.empty());
    CHECK(r.warnings[0].rfind("KinkWarning", 0) == 0);
  }
}
