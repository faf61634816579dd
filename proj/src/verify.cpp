#include "fracevo/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>

#include "fracevo/blackscholes.hpp"
#include "fracevo/diffusion.hpp"
#include "fracevo/error.hpp"
#include "fracevo/subordination.hpp"
#include "fracevo/transforms.hpp"

#ifndef FRACEVO_VERSION
#define FRACEVO_VERSION "0.0.0"
#endif

namespace fracevo::verify {

namespace {

using transforms::TimeFunction;

constexpr std::array<std::string_view, 5> kSuites = {"specialfn", "lemmas", "subordination", "diffusion",
                                                     "blackscholes"};

std::vector<double> alphas_or(const VerifyOptions& o, std::vector<double> fallback) {
  if (o.alpha) return {*o.alpha};
  return fallback;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

void add(Report& report, std::string name, double threshold, const std::function<double()>& compute) {
  Check c;
  c.name = std::move(name);
  c.threshold = threshold;
  try {
    c.value = compute();
    c.passed = std::isfinite(c.value) && c.value <= threshold;
  } catch (const Error& e) {
    c.value = std::numeric_limits<double>::quiet_NaN();
    c.error = std::string(to_string(e.code())) + ": " + e.what();
  }
  report.checks.push_back(std::move(c));
}

TimeFunction exponential(double lambda) {
  return {[lambda](double t) { return std::exp(-lambda * t); }, "exp(-" + fmt(lambda) + " t)"};
}

TimeFunction mittag_leffler_curve(double alpha, const special::SeriesConfig& cfg) {
  return {[alpha, cfg](double t) { return special::ml_standard(alpha, std::pow(t, alpha), cfg).value; },
          "E_alpha(-t^alpha)"};
}

void specialfn_suite(Report& r, const VerifyOptions& o) {
  add(r, "density_half_closed_form", 1e-10, [&] {
    double worst = 0.0;
    for (int i = 0; i <= 120; ++i) {
      const double z = 0.05 * i;
      const double exact = std::exp(-0.25 * z * z) / std::sqrt(std::numbers::pi);
      worst = std::max(worst, std::abs(special::ml_density(0.5, z, o.series).value - exact));
    }
    return worst;
  });
  add(r, "ml_half_erfc", 1e-9, [&] {
    double worst = 0.0;
    for (int i = 0; i <= 80; ++i) {
      const double z = 0.05 * i;
      const double exact = std::exp(z * z) * std::erfc(z);
      worst = std::max(worst, std::abs(special::ml_standard(0.5, z, o.series).value - exact));
    }
    return worst;
  });
  for (double alpha : {0.3, 0.5, 0.7, 0.9}) {
    add(r, "density_normalization[alpha=" + fmt(alpha) + "]", 1e-8, [&] {
      return std::abs(subordination::DensityTable(alpha, o.quad, o.series).mass() - 1.0);
    });
  }
  add(r, "laplace_property", 1e-8, [&] {
    double worst = 0.0;
    for (double alpha : {0.3, 0.5, 0.7}) {
      const subordination::DensityTable table(alpha, o.quad, o.series);
      for (double p : {0.5, 1.0, 2.0, 5.0}) {
        const double lhs = table.integrate([p](double z) { return std::exp(-p * z); });
        worst = std::max(worst, std::abs(lhs - special::ml_standard(alpha, p, o.series).value));
      }
    }
    return worst;
  });
}

void lemmas_suite(Report& r, const VerifyOptions& o) {
  const TimeFunction u = exponential(1.0);
  for (double alpha : alphas_or(o, {0.5, 0.7})) {
    const TimeFunction ua = mittag_leffler_curve(alpha, o.series);
    add(r, "laplace_relation[alpha=" + fmt(alpha) + "]", 1e-6, [&] {
      const std::array<double, 2> p{1.0, 2.0};
      return transforms::check_lemma1(u, ua, alpha, p, o.quad);
    });
    add(r, "mellin_relation[alpha=" + fmt(alpha) + "]", 1e-5, [&] {
      return transforms::check_lemma2(u, ua, alpha, transforms::default_s_grid(alpha), o.quad);
    });
  }
}

void subordination_suite(Report& r, const VerifyOptions& o) {
  for (double alpha : alphas_or(o, {0.3, 0.5, 0.7, 0.9})) {
    add(r, "scalar_evolution[alpha=" + fmt(alpha) + "]", 1e-7, [&] {
      if (alpha == 1.0) return std::abs(subordination::subordinate({exponential(1.0), 1.0, 2.0, o.quad}).value -
                                        std::exp(-2.0));
      const subordination::DensityTable table(alpha, o.quad, o.series);
      double worst = 0.0;
      for (double lambda : {0.5, 1.0, 2.0}) {
        for (double t : {0.25, 1.0, 4.0}) {
          const double value = subordination::subordinate(table, exponential(lambda), t).value;
          const double exact = special::ml_standard(alpha, lambda * std::pow(t, alpha), o.series).value;
          worst = std::max(worst, std::abs(value - exact));
        }
      }
      return worst;
    });
  }
  add(r, "dirac_identity", 0.0, [&] {
    double mismatches = 0.0;
    for (double t : {0.5, 1.0, 3.0}) {
      const TimeFunction u = exponential(1.0);
      if (subordination::subordinate({u, 1.0, t, o.quad}).value != u(t)) mismatches += 1.0;
    }
    return mismatches;
  });
}

void diffusion_suite(Report& r, const VerifyOptions& o) {
  const std::vector<double> alphas = alphas_or(o, {0.5, 0.7});
  for (double alpha : alphas) {
    add(r, "kernel_mellin_closed_form[alpha=" + fmt(alpha) + "]", 1e-4, [&] {
      const diffusion::FractionalHeatKernel kernel(alpha, o.quad);
      double worst = 0.0;
      for (double radius : {0.5, 1.0, 2.0}) {
        for (double s : {0.1, 0.2, 0.3}) {
          if (s >= 0.5 * alpha) continue;
          const TimeFunction g{[&](double t) { return kernel(radius, t, 1).value; }, "G_alpha"};
          const double closed = diffusion::frac_kernel_mellin_closed(radius, s, 1, alpha);
          worst = std::max(worst, std::abs(transforms::mellin(g, s, o.quad) / closed - 1.0));
        }
      }
      return worst;
    });
    add(r, "kernel_mass[alpha=" + fmt(alpha) + "]", 1e-6, [&] {
      double worst = 0.0;
      for (double t : {1.0, 2.0}) worst = std::max(worst, std::abs(diffusion::mass_check(t, 1, alpha, o.quad) - 1.0));
      return worst;
    });
  }
}

// Textbook call price in calendar variables; theta is the time to expiry.
double textbook_call(double S, double E, double r, double sigma, double theta) {
  const double root = sigma * std::sqrt(theta);
  const double d1 = (std::log(S / E) + (r + 0.5 * sigma * sigma) * theta) / root;
  const double d2 = d1 - root;
  const auto cdf = [](double d) { return 0.5 * std::erfc(-d / std::numbers::sqrt2); };
  return S * cdf(d1) - E * std::exp(-r * theta) * cdf(d2);
}

void blackscholes_suite(Report& r, const VerifyOptions& o) {
  add(r, "parameterization_consistency", 1e-10, [&] {
    double worst = 0.0;
    for (double sigma : {0.1, 0.2, 0.4}) {
      for (double rate : {0.0, 0.02, 0.05}) {
        for (double theta : {0.25, 1.0, 2.0}) {
          const blackscholes::OptionSpec opt{105.0, 100.0, rate, sigma, theta};
          const double value = blackscholes::bs_price(opt.spot, opt.strike, blackscholes::to_transformed(opt, 0.0));
          worst = std::max(worst, std::abs(value - textbook_call(105.0, 100.0, rate, sigma, theta)));
        }
      }
    }
    return worst;
  });
  const std::array<double, 2> taus{0.05, 0.1};
  for (double alpha : alphas_or(o, {0.5})) {
    add(r, "integral_equation_residual[alpha=" + fmt(alpha) + "]", alpha == 1.0 ? 1e-5 : 1e-3,
        [&] { return blackscholes::frac_bs_residual(120.0, 100.0, alpha, taus, 1.0, o.quad).max_residual; });
  }
  if (!o.alpha) {
    add(r, "integral_equation_residual[alpha=1]", 1e-5,
        [&] { return blackscholes::frac_bs_residual(110.0, 100.0, 1.0, taus, 1.0, o.quad).max_residual; });
  }
}

void run_one(std::string_view suite, Report& r, const VerifyOptions& o) {
  if (suite == "specialfn") specialfn_suite(r, o);
  if (suite == "lemmas") lemmas_suite(r, o);
  if (suite == "subordination") subordination_suite(r, o);
  if (suite == "diffusion") diffusion_suite(r, o);
  if (suite == "blackscholes") blackscholes_suite(r, o);
}

void append_number(std::string& out, double x) {
  if (!std::isfinite(x)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

void append_string(std::string& out, std::string_view s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

}  // namespace

bool Report::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::vector<std::string_view> suite_names() {
  std::vector<std::string_view> names(kSuites.begin(), kSuites.end());
  names.push_back("all");
  return names;
}

bool is_suite(std::string_view name) {
  return name == "all" || std::find(kSuites.begin(), kSuites.end(), name) != kSuites.end();
}

Report run_suite(std::string_view suite, const VerifyOptions& options) {
  require(is_suite(suite), "verify: unknown suite '" + std::string(suite) + "'");
  if (options.alpha)
    require(std::isfinite(*options.alpha) && *options.alpha > 0.0 && *options.alpha <= 1.0,
            "verify: alpha must satisfy 0 < alpha <= 1");
  options.quad.validate();
  options.series.validate();
  Report report;
  report.suite = std::string(suite);
  if (suite == "all") {
    for (std::string_view s : kSuites) run_one(s, report, options);
  } else {
    run_one(suite, report, options);
  }
  return report;
}

std::string to_json(const Report& report, const VerifyOptions& options) {
  std::string out = "{\n  \"tool\": \"fracevo\",\n  \"version\": \"" FRACEVO_VERSION "\",\n  \"suite\": ";
  append_string(out, report.suite);
  out += ",\n  \"settings\": {\"alpha\": ";
  if (options.alpha)
    append_number(out, *options.alpha);
  else
    out += "null";
  out += ", \"series_rel_tol\": ";
  append_number(out, options.series.rel_tol);
  out += ", \"series_max_terms\": " + std::to_string(options.series.max_terms);
  out += ", \"quadrature\": ";
  append_string(out, options.quad.scheme == quad::Scheme::AdaptiveSimpson ? "adaptive_simpson" : "gauss_legendre_panels");
  out += ", \"panels\": " + std::to_string(options.quad.panels);
  out += ", \"nodes_per_panel\": " + std::to_string(options.quad.nodes_per_panel);
  out += ", \"abs_tol\": ";
  append_number(out, options.quad.abs_tol);
  out += "},\n  \"passed\": ";
  out += report.passed() ? "true" : "false";
  out += ",\n  \"checks\": [";
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    const Check& c = report.checks[i];
    out += i == 0 ? "\n    {" : ",\n    {";
    out += "\"name\": ";
    append_string(out, c.name);
    out += ", \"value\": ";
    append_number(out, c.value);
    out += ", \"threshold\": ";
    append_number(out, c.threshold);
    out += ", \"passed\": ";
    out += c.passed ? "true" : "false";
    if (!c.error.empty()) {
      out += ", \"error\": ";
      append_string(out, c.error);
    }
    out += "}";
  }
  out += report.checks.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

}  // namespace fracevo::verify
