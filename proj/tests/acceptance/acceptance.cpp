// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Every criterion compares against something the library does not compute
// itself (C library erfc, closed forms, frozen high-precision values, a
// textbook pricing formula) or checks an exact identity.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fracevo/blackscholes.hpp"
#include "fracevo/diffusion.hpp"
#include "fracevo/error.hpp"
#include "fracevo/mittag_leffler.hpp"
#include "fracevo/quadrature.hpp"
#include "fracevo/subordination.hpp"
#include "fracevo/transforms.hpp"
#include "oracles/reference_values.hpp"

using namespace fracevo;
namespace fs = std::filesystem;

namespace {

struct Measured {
  double value = 0.0;  // worst deviation found
  double threshold = 0.0;
  std::string note;
};

using Criterion = std::function<Measured()>;

transforms::TimeFunction exp_decay(double lambda) {
  return {[lambda](double t) { return std::exp(-lambda * t); }, "exp(-lambda t)"};
}

Measured density_normalization() {
  double worst = 0.0;
  for (double a : {0.3, 0.5, 0.7, 0.9}) {
    quad::QuadratureSpec spec;
    spec.tail_cutoff = special::density_cutoff(a);
    const double mass = quad::integrate_halfline([a](double z) { return special::ml_density(a, z).value; }, spec);
    worst = std::max(worst, std::abs(mass - 1.0));
  }
  return {worst, 1e-8, "alpha in {0.3, 0.5, 0.7, 0.9}"};
}

Measured laplace_property() {
  double worst = 0.0;
  for (double a : {0.3, 0.5, 0.7})
    for (double p : {0.5, 1.0, 2.0, 5.0}) {
      quad::QuadratureSpec spec;
      spec.tail_cutoff = special::density_cutoff(a);
      const double lt =
          quad::integrate_halfline([a, p](double z) { return std::exp(-p * z) * special::ml_density(a, z).value; }, spec);
      worst = std::max(worst, std::abs(lt - special::ml_standard(a, p).value));
      if (a == 0.5) worst = std::max(worst, std::abs(lt - std::exp(p * p) * std::erfc(p)));
    }
  return {worst, 1e-8, "12 (alpha, p) points; alpha = 0.5 also against exp(p^2) erfc(p)"};
}

Measured half_order_closed_forms() {
  double density = 0.0, ml = 0.0;
  for (int i = 0; i <= 600; ++i) {
    const double z = 0.01 * i;
    density = std::max(density,
                       std::abs(special::ml_density(0.5, z).value - std::exp(-0.25 * z * z) / std::sqrt(std::numbers::pi)));
  }
  for (int i = 0; i <= 400; ++i) {
    const double z = 0.01 * i;
    ml = std::max(ml, std::abs(special::ml_standard(0.5, z).value - std::exp(z * z) * std::erfc(z)));
  }
  // Both bounds must hold; report the larger ratio to its own threshold.
  const double ratio = std::max(density / 1e-10, ml / 1e-9);
  char note[128];
  std::snprintf(note, sizeof note, "density %.2e (< 1e-10), E_1/2 %.2e (< 1e-9); value is the worse ratio", density, ml);
  return {ratio, 1.0, note};
}

Measured scalar_evolution() {
  double worst = 0.0;
  for (double lambda : {0.5, 1.0, 2.0})
    for (double a : {0.3, 0.5, 0.7, 0.9})
      for (double t : {0.25, 1.0, 4.0}) {
        const double got = subordination::subordinate({exp_decay(lambda), a, t, {}}).value;
        const double arg = lambda * std::pow(t, a);
        worst = std::max(worst, std::abs(got - special::ml_standard(a, arg).value));
        if (a == 0.5) worst = std::max(worst, std::abs(got - std::exp(arg * arg) * std::erfc(arg)));
      }
  return {worst, 1e-7, "36 (lambda, alpha, t) points"};
}

transforms::TimeFunction ml_partner(double a) {
  return {[a](double t) { return special::ml_standard(a, std::pow(t, a)).value; }, "E_alpha(-t^alpha)"};
}

Measured laplace_relation() {
  double worst = 0.0;
  const std::vector<double> ps{1.0, 2.0};
  for (double a : {0.5, 0.7}) worst = std::max(worst, transforms::check_lemma1(exp_decay(1.0), ml_partner(a), a, ps));
  return {worst, 1e-6, "alpha in {0.5, 0.7}, p in {1, 2}"};
}

Measured mellin_relation() {
  double worst = 0.0;
  for (double a : {0.5, 0.7})
    worst = std::max(worst, transforms::check_lemma2(exp_decay(1.0), ml_partner(a), a, transforms::default_s_grid(a)));
  return {worst, 1e-5, "s in {alpha/4, alpha/2, 3 alpha/4}"};
}

Measured kernel_mellin() {
  double worst = 0.0;
  int points = 0, skipped = 0;
  for (double a : {0.5, 0.7}) {
    const diffusion::FractionalHeatKernel kernel(a);
    for (double r : {0.5, 1.0, 2.0})
      for (double s : {0.1, 0.2, 0.3}) {
        if (s >= 0.5 * a) {
          ++skipped;  // closed form diverges at and beyond s = alpha/2 for n = 1
          continue;
        }
        const transforms::TimeFunction g{[&](double t) { return kernel(r, t, 1).value; }, "G_alpha(r, .)"};
        const double closed = diffusion::frac_kernel_mellin_closed(r, s, 1, a);
        worst = std::max(worst, std::abs(transforms::mellin(g, s) / closed - 1.0));
        ++points;
      }
  }
  // Anchor the closed form itself to the frozen high-precision value.
  worst = std::max(worst, std::abs(diffusion::frac_kernel_mellin_closed(1, 0.2, 1, 0.5) / oracle::kKernelMellinHalf - 1));
  return {worst, 1e-4,
          std::to_string(points) + " points inside the strip, " + std::to_string(skipped) +
              " of the 18 grid points lie outside it (relative error)"};
}

Measured mass_conservation() {
  double worst = 0.0;
  for (double t : {1.0, 2.0})
    for (double a : {0.5, 0.7}) worst = std::max(worst, std::abs(diffusion::mass_check(t, 1, a) - 1.0));
  return {worst, 1e-6, "(t, alpha) in {1, 2} x {0.5, 0.7}"};
}

double textbook_call(double S, double K, double r, double sigma, double T) {
  const auto N = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
  const double vt = sigma * std::sqrt(T);
  const double d1 = (std::log(S / K) + (r + 0.5 * sigma * sigma) * T) / vt;
  return S * N(d1) - K * std::exp(-r * T) * N(d1 - vt);
}

Measured parameterization() {
  double worst = 0.0;
  for (double sigma : {0.1, 0.2, 0.4})
    for (double r : {0.0, 0.02, 0.05})
      for (double T : {0.25, 1.0, 2.0}) {
        const blackscholes::OptionSpec opt{105, 100, r, sigma, T};
        const double v = blackscholes::bs_price(105, 100, blackscholes::to_transformed(opt, 0.0));
        worst = std::max(worst, std::abs(v - textbook_call(105, 100, r, sigma, T)));
      }
  worst = std::max(worst, std::abs(blackscholes::bs_price(100, 100, {0.02, 1.0}) - oracle::kCallAtm));
  return {worst, 1e-10, "27 (sigma, r, T - t) points, S = 105, E = 100"};
}

Measured bs_residual() {
  const std::vector<double> taus{0.05, 0.1};
  const double half = blackscholes::frac_bs_residual(120, 100, 0.5, taus, 1.0).max_residual;
  const double one = blackscholes::frac_bs_residual(110, 100, 1.0, taus, 1.0).max_residual;
  char note[128];
  std::snprintf(note, sizeof note, "alpha = 0.5: %.2e (< 1e-3), alpha = 1: %.2e (< 1e-5); value is the worse ratio",
                half, one);
  return {std::max(half / 1e-3, one / 1e-5), 1.0, note};
}

Measured dirac_branch() {
  int mismatches = 0, compared = 0;
  const auto same = [&](double a, double b) {
    ++compared;
    if (a != b) ++mismatches;
  };
  const transforms::TimeFunction u{[](double t) { return std::exp(-t) * std::cos(3 * t); }, "u"};
  for (double t : {0.1, 1.0, 3.0, 12.0}) {
    same(subordination::subordinate({u, 1.0, t, {}}).value, u(t));
    same(subordination::subordinate({u, 1.0, t, {}, subordination::Form::ScaledDensity}).value, u(t));
    same(subordination::subordinate(subordination::DensityTable(1.0), u, t).value, u(t));
  }
  const std::vector<double> ts{1.0, 2.0, 3.0};
  for (const auto& e : subordination::subordinate_grid(exp_decay(1.0), 1.0, ts)) same(e.result.value, std::exp(-e.t));
  const auto heat = [](double y, double t) { return diffusion::heat_kernel({y, t, 1}); };
  const auto g = subordination::subordinate_kernel(heat, 1.0, 0.7);
  for (double y : {0.0, 0.5, 2.0}) same(g(y), heat(y, 0.7));
  const diffusion::FractionalHeatKernel k(1.0);
  for (int n : {1, 2, 3}) {
    same(diffusion::frac_heat_kernel({1, 1, n, 1.0}).value, diffusion::heat_kernel({1, 1, n}));
    same(k(0.0, 2.0, n).value, diffusion::heat_kernel({0.0, 2.0, n}));
  }
  for (double S : {80.0, 100.0, 120.0}) same(blackscholes::frac_bs_price(S, 100, 1.0, 0.02, 1.0).value,
                                              blackscholes::bs_price(S, 100, {0.02, 1.0}));
  return {static_cast<double>(mismatches), 0.0, std::to_string(compared) + " alpha = 1 evaluations compared bitwise"};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Measured cli_determinism() {
  const fs::path dir = fs::temp_directory_path() / ("fracevo_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  int exits[2];
  std::string reports[2];
  for (int i = 0; i < 2; ++i) {
    const fs::path out = dir / ("verify_" + std::to_string(i) + ".json");
    const std::string cmd = std::string("'") + FRACEVO_CLI_PATH + "' verify --suite all --out '" + out.string() + "'";
    const int status = std::system(cmd.c_str());
    exits[i] = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    reports[i] = slurp(out);
  }
  fs::remove_all(dir);
  const bool identical = !reports[0].empty() && reports[0] == reports[1];
  const int failures = (exits[0] != 0) + (exits[1] != 0) + (identical ? 0 : 1);
  return {static_cast<double>(failures), 0.0,
          "exit codes " + std::to_string(exits[0]) + ", " + std::to_string(exits[1]) + "; reports " +
              (identical ? "byte-identical (" + std::to_string(reports[0].size()) + " bytes)" : "differ")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Criterion>> criteria = {
      {"AC1  density normalization", density_normalization},
      {"AC2  Laplace transform of the density", laplace_property},
      {"AC3  half-order closed forms", half_order_closed_forms},
      {"AC4  subordinated exponential vs Mittag-Leffler", scalar_evolution},
      {"AC5  Laplace relation u -> u_alpha", laplace_relation},
      {"AC6  Mellin relation u -> u_alpha", mellin_relation},
      {"AC7  kernel Mellin transform vs closed form", kernel_mellin},
      {"AC8  kernel mass conservation", mass_conservation},
      {"AC9  Black-Scholes parameterization consistency", parameterization},
      {"AC10 fractional Black-Scholes integral-equation residual", bs_residual},
      {"AC11 alpha = 1 returns the input bit for bit", dirac_branch},
      {"AC12 CLI verify determinism", cli_determinism},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
      const Measured m = run();
      ok = std::isfinite(m.value) && m.value <= m.threshold;
      char buf[96];
      std::snprintf(buf, sizeof buf, "value=%.3e threshold=%.1e", m.value, m.threshold);
      detail = std::string(buf) + "  [" + m.note + "]";
    } catch (const Error& e) {
      detail = std::string("error ") + std::string(to_string(e.code())) + ": " + e.what();
    } catch (const std::exception& e) {
      detail = std::string("error: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %-58s %s (%.2fs)\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
