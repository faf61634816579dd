// fracevo command-line tool. Talks to the library only through fracevo.h.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_support.hpp"
#include "fracevo/fracevo.h"
#include "json.hpp"

namespace {

using fracevo_cli::CliError;
using fracevo_cli::Table;

struct Common {
  std::string format = "csv";
  std::string out;
  std::string config;
  double rel_tol = 1e-14;
  int max_terms = 500;
  std::string scheme = "gauss_legendre_panels";
  int panels = 64;
  int nodes = 16;
  double abs_tol = 1e-10;
  int grading_levels = 0;
};

struct Params {
  double alpha = 1.0;
  double beta = 1.0;
  std::string z, z_grid;
  std::string t, t_grid;
  std::string r, r_grid;
  int n = 1;
  std::string solution = "exp";
  double lambda = 1.0;
  double value = 1.0;
  double mu = 1.0;
  std::string spot, s_grid;
  double strike = 100.0;
  std::string tau, tau_grid;
  double lambda0 = 0.0;
  std::optional<double> rate, sigma, expiry;
  double time = 0.0;
  std::string suite = "all";
};

struct ContextDeleter {
  void operator()(fracevo_context* c) const { fracevo_context_destroy(c); }
};
using Context = std::unique_ptr<fracevo_context, ContextDeleter>;

void check(fracevo_status status, const fracevo_context* ctx) {
  if (status == FRACEVO_OK) return;
  throw CliError(fracevo_cli::exit_code_for(status), fracevo_status_string(status),
                 ctx ? fracevo_last_error(ctx) : "library call failed");
}

Context make_context(const Common& c) {
  fracevo_context* raw = nullptr;
  check(fracevo_context_create(&raw), nullptr);
  Context ctx(raw);
  check(fracevo_set_series(ctx.get(), c.rel_tol, c.max_terms), ctx.get());
  fracevo_quadrature q{};
  if (c.scheme == "gauss_legendre_panels") {
    q.scheme = FRACEVO_SCHEME_GAUSS_LEGENDRE_PANELS;
  } else if (c.scheme == "adaptive_simpson") {
    q.scheme = FRACEVO_SCHEME_ADAPTIVE_SIMPSON;
  } else {
    throw CliError(fracevo_cli::kExitInvalid, "invalid_argument", "unknown scheme '" + c.scheme + "'");
  }
  q.panels = c.panels;
  q.nodes_per_panel = c.nodes;
  q.tail_cutoff = 40.0;
  q.abs_tol = c.abs_tol;
  q.grading_levels = c.grading_levels;
  check(fracevo_set_quadrature(ctx.get(), &q), ctx.get());
  return ctx;
}

std::string settings_of(const Common& c) {
  using fracevo_cli::format_double;
  return "rel_tol=" + format_double(c.rel_tol) + " max_terms=" + std::to_string(c.max_terms) +
         " scheme=" + c.scheme + " panels=" + std::to_string(c.panels) + " nodes_per_panel=" + std::to_string(c.nodes) +
         " abs_tol=" + format_double(c.abs_tol) + " grading_levels=" + std::to_string(c.grading_levels);
}

// Single value or grid; exactly one of the pair must be given.
std::vector<double> points(const std::string& single, const std::string& grid, const char* name) {
  if (!single.empty() && !grid.empty())
    throw CliError(fracevo_cli::kExitInvalid, "invalid_argument",
                   std::string("give either --") + name + " or --" + name + "-grid, not both");
  if (single.empty() && grid.empty())
    throw CliError(fracevo_cli::kExitInvalid, "invalid_argument",
                   std::string("missing --") + name + " or --" + name + "-grid");
  const std::vector<double> v = fracevo_cli::parse_grid(single.empty() ? grid : single);
  if (!single.empty() && v.size() != 1)
    throw CliError(fracevo_cli::kExitInvalid, "invalid_argument", std::string("--") + name + " takes one value");
  return v;
}

const char* method_name(int method) {
  switch (method) {
    case FRACEVO_METHOD_CLOSED_FORM: return "closed_form";
    case FRACEVO_METHOD_SERIES: return "series";
    case FRACEVO_METHOD_ASYMPTOTIC: return "asymptotic";
    case FRACEVO_METHOD_INTEGRAL: return "integral";
  }
  return "unknown";
}

Table eval_table(const char* command, fracevo_context* ctx, const Params& p, bool density, bool& all_converged) {
  Table table;
  table.command = command;
  table.columns = {"alpha", "beta", "z", "value", "terms_used", "converged", "method"};
  for (double z : points(p.z, p.z_grid, "z")) {
    fracevo_eval_result r{};
    fracevo_status s = FRACEVO_OK;
    if (density) {
      s = p.beta == 1.0 ? fracevo_ml_density(ctx, p.alpha, z, &r)
                        : fracevo_ml_density_generalized(ctx, p.alpha, p.beta, z, &r);
    } else {
      s = fracevo_ml_generalized(ctx, p.alpha, p.beta, z, &r);
    }
    check(s, ctx);
    all_converged = all_converged && r.converged;
    table.rows.push_back({p.alpha, p.beta, z, r.value, static_cast<long long>(r.terms_used),
                          static_cast<long long>(r.converged), std::string(method_name(r.method))});
  }
  return table;
}

struct Solution {
  std::string kind;
  double lambda, value, mu;
};

double solution_eval(double t, void* data) {
  const auto* s = static_cast<const Solution*>(data);
  if (s->kind == "exp") return std::exp(-s->lambda * t);
  if (s->kind == "const") return s->value;
  return std::pow(t, s->mu);
}

Table subordinate_table(fracevo_context* ctx, const Params& p, fracevo_status& first_failure) {
  if (p.solution != "exp" && p.solution != "const" && p.solution != "power")
    throw CliError(fracevo_cli::kExitInvalid, "invalid_argument", "--solution must be exp, const or power");
  if (p.solution == "power" && !(p.mu >= 0.0))
    throw CliError(fracevo_cli::kExitInvalid, "invalid_argument", "--mu must be non-negative");
  Solution sol{p.solution, p.lambda, p.value, p.mu};
  const std::vector<double> ts = points(p.t, p.t_grid, "t");
  std::vector<fracevo_subordination_result> results(ts.size());
  std::vector<fracevo_status> statuses(ts.size());
  first_failure = fracevo_subordinate_grid(ctx, solution_eval, &sol, 0.0, p.alpha, ts.data(), ts.size(),
                                           results.data(), statuses.data());
  bool any_row_status = false;
  for (fracevo_status s : statuses) any_row_status = any_row_status || s != FRACEVO_OK;
  if (first_failure != FRACEVO_OK && !any_row_status) check(first_failure, ctx);
  Table table;
  table.command = "subordinate";
  table.columns = {"t", "alpha", "value", "mass_used", "status"};
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const bool ok = statuses[i] == FRACEVO_OK;
    const double nan = std::nan("");
    table.rows.push_back({ts[i], p.alpha, ok ? results[i].value : nan, ok ? results[i].density_mass_used : nan,
                          std::string(fracevo_status_string(statuses[i]))});
  }
  return table;
}

Table diffusion_table(fracevo_context* ctx, const Params& p) {
  fracevo_kernel* raw = nullptr;
  check(fracevo_kernel_create(ctx, p.alpha, &raw), ctx);
  const std::unique_ptr<fracevo_kernel, void (*)(fracevo_kernel*)> kernel(raw, fracevo_kernel_destroy);
  Table table;
  table.command = "diffusion";
  table.columns = {"r", "t", "n", "alpha", "value", "mass_used"};
  const std::vector<double> rs = points(p.r, p.r_grid, "r");
  const std::vector<double> ts = points(p.t, p.t_grid, "t");
  for (double t : ts) {
    for (double r : rs) {
      fracevo_subordination_result res{};
      const fracevo_status s = fracevo_kernel_eval(kernel.get(), r, t, p.n, &res);
      if (s != FRACEVO_OK)
        throw CliError(fracevo_cli::exit_code_for(s), fracevo_status_string(s), fracevo_kernel_last_error(kernel.get()));
      table.rows.push_back({r, t, static_cast<long long>(p.n), p.alpha, res.value, res.density_mass_used});
    }
  }
  return table;
}

Table bs_table(fracevo_context* ctx, const Params& p) {
  std::vector<double> taus;
  double lambda0 = p.lambda0;
  const bool calendar = p.rate || p.sigma || p.expiry;
  if (calendar) {
    if (!(p.rate && p.sigma && p.expiry))
      throw CliError(fracevo_cli::kExitInvalid, "invalid_argument", "--rate, --sigma and --expiry go together");
    if (!p.tau.empty() || !p.tau_grid.empty())
      throw CliError(fracevo_cli::kExitInvalid, "invalid_argument", "give --tau or calendar inputs, not both");
    double tau = 0.0;
    // The spot does not enter tau or lambda0.
    check(fracevo_to_transformed(p.strike, p.strike, *p.rate, *p.sigma, *p.expiry, p.time, &tau, &lambda0), ctx);
    taus = {tau};
  } else {
    taus = points(p.tau, p.tau_grid, "tau");
  }
  Table table;
  table.command = "bs-price";
  table.columns = {"S", "E", "tau", "lambda0", "alpha", "value", "mass_used"};
  for (double tau : taus) {
    for (double S : points(p.spot, p.s_grid, "spot")) {
      fracevo_subordination_result r{};
      check(fracevo_frac_bs_price(ctx, S, p.strike, p.alpha, tau, lambda0, &r), ctx);
      table.rows.push_back({S, p.strike, tau, lambda0, p.alpha, r.value, r.density_mass_used});
    }
  }
  return table;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw CliError(fracevo_cli::kExitIo, "io_error", "failed to write to standard output");
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw CliError(fracevo_cli::kExitIo, "io_error", "cannot open '" + path + "' for writing");
  f << text;
  f.close();
  if (!f) throw CliError(fracevo_cli::kExitIo, "io_error", "failed writing '" + path + "'");
}

// Expands a JSON config into flags placed right after the subcommand, so
// that flags given on the command line (parsed later, last one wins) override it.
std::vector<std::string> with_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.size() < 2) return args;
  std::ifstream f(path);
  if (!f) throw CliError(fracevo_cli::kExitIo, "io_error", "cannot read config '" + path + "'");
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw CliError(fracevo_cli::kExitInvalid, "invalid_argument", "config '" + path + "': " + e.what());
  }
  if (!cfg.is_object())
    throw CliError(fracevo_cli::kExitInvalid, "invalid_argument", "config '" + path + "' must be a JSON object");
  std::vector<std::string> expanded{args[0], args[1]};
  for (const auto& [key, value] : cfg.items()) {
    if (key == "config") continue;
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) expanded.push_back(flag);
    } else if (value.is_number_integer()) {
      expanded.push_back(flag);
      expanded.push_back(std::to_string(value.get<long long>()));
    } else if (value.is_number()) {
      expanded.push_back(flag);
      expanded.push_back(fracevo_cli::format_double(value.get<double>()));
    } else if (value.is_string()) {
      expanded.push_back(flag);
      expanded.push_back(value.get<std::string>());
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& item : value) {
        if (!item.is_number())
          throw CliError(fracevo_cli::kExitInvalid, "invalid_argument", "config key '" + key + "': arrays hold numbers");
        joined += (joined.empty() ? "" : ",") + fracevo_cli::format_double(item.get<double>());
      }
      expanded.push_back(flag);
      expanded.push_back(joined);
    } else {
      throw CliError(fracevo_cli::kExitInvalid, "invalid_argument", "config key '" + key + "' has an unsupported type");
    }
  }
  expanded.insert(expanded.end(), args.begin() + 2, args.end());
  return expanded;
}

void add_common(CLI::App* sub, Common& c) {
  sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", c.out, "output file (default: standard output)");
  sub->add_option("--config", c.config, "JSON object of flag values; explicit flags win");
  sub->add_option("--rel-tol", c.rel_tol, "series relative tolerance");
  sub->add_option("--max-terms", c.max_terms, "series term cap");
  sub->add_option("--scheme", c.scheme, "gauss_legendre_panels or adaptive_simpson");
  sub->add_option("--panels", c.panels, "quadrature panels");
  sub->add_option("--nodes", c.nodes, "Gauss nodes per panel");
  sub->add_option("--abs-tol", c.abs_tol, "quadrature absolute tolerance");
  sub->add_option("--grading-levels", c.grading_levels, "geometric refinement levels of the first panel");
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  args = with_config(args);

  Common common;
  Params p;
  CLI::App app{"fracevo: fractional evolution via subordination"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fracevo_version()));

  auto* ml = app.add_subcommand("ml-eval", "generalized Mittag-Leffler F_{alpha,beta}(z) = Gamma(beta) E_{alpha,beta}(-z)");
  add_common(ml, common);
  ml->add_option("--alpha", p.alpha)->required();
  ml->add_option("--beta", p.beta);
  ml->add_option("--z", p.z);
  ml->add_option("--z-grid", p.z_grid);

  auto* dens = app.add_subcommand("density", "subordination density f_alpha (or f_{alpha,beta} with --beta)");
  add_common(dens, common);
  dens->add_option("--alpha", p.alpha)->required();
  dens->add_option("--beta", p.beta);
  dens->add_option("--z", p.z);
  dens->add_option("--z-grid", p.z_grid);

  auto* sub = app.add_subcommand("subordinate", "fractional extension of exp(-lambda t), a constant, or t^mu");
  add_common(sub, common);
  sub->add_option("--alpha", p.alpha)->required();
  sub->add_option("--solution", p.solution, "exp, const or power");
  sub->add_option("--lambda", p.lambda);
  sub->add_option("--value", p.value);
  sub->add_option("--mu", p.mu);
  sub->add_option("--t", p.t);
  sub->add_option("--t-grid", p.t_grid);

  auto* diff = app.add_subcommand("diffusion", "fractional heat kernel G_alpha(r, t) in n dimensions");
  add_common(diff, common);
  diff->add_option("--alpha", p.alpha)->required();
  diff->add_option("--n", p.n);
  diff->add_option("--r", p.r);
  diff->add_option("--r-grid", p.r_grid);
  diff->add_option("--t", p.t);
  diff->add_option("--t-grid", p.t_grid);

  auto* bs = app.add_subcommand("bs-price", "fractional Black-Scholes call price");
  add_common(bs, common);
  bs->add_option("--alpha", p.alpha);
  bs->add_option("--spot", p.spot);
  bs->add_option("--s-grid", p.s_grid);
  bs->add_option("--strike", p.strike);
  bs->add_option("--tau", p.tau);
  bs->add_option("--tau-grid", p.tau_grid);
  bs->add_option("--lambda0", p.lambda0);
  bs->add_option("--rate", p.rate);
  bs->add_option("--sigma", p.sigma);
  bs->add_option("--expiry", p.expiry);
  bs->add_option("--time", p.time, "calendar time t <= expiry");

  auto* ver = app.add_subcommand("verify", "run a verification suite and emit its JSON report");
  add_common(ver, common);
  std::optional<double> verify_alpha;
  ver->add_option("--suite", p.suite, "specialfn, lemmas, subordination, diffusion, blackscholes or all");
  ver->add_option("--alpha", verify_alpha, "restrict alpha-dependent checks to this order");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
    app.parse(std::move(reversed));
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << fracevo_cli::error_record("invalid_argument", fracevo_cli::kExitInvalid, e.what());
    return fracevo_cli::kExitInvalid;
  }

  Context ctx = make_context(common);
  const std::string version = fracevo_version();
  const auto render = [&](const Table& t) {
    Table copy = t;
    copy.settings = settings_of(common);
    return common.format == "json" ? fracevo_cli::to_json(copy, version) : fracevo_cli::to_csv(copy, version);
  };

  if (ver->parsed()) {
    if (common.format != "json" && ver->count("--format") > 0)
      throw CliError(fracevo_cli::kExitInvalid, "invalid_argument", "verify writes JSON only");
    int passed = 0;
    std::size_t size = 0;
    check(fracevo_verify(ctx.get(), p.suite.c_str(), verify_alpha.value_or(0.0), &passed, &size), ctx.get());
    std::string report(size, '\0');
    check(fracevo_copy_report(ctx.get(), report.data(), report.size()), ctx.get());
    report.pop_back();
    emit(report, common.out);
    if (!passed) {
      std::cerr << fracevo_cli::error_record("check_failed", fracevo_cli::kExitNumerical,
                                             "one or more verification checks failed");
      return fracevo_cli::kExitNumerical;
    }
    return fracevo_cli::kExitOk;
  }

  if (ml->parsed() || dens->parsed()) {
    bool converged = true;
    const Table t = eval_table(ml->parsed() ? "ml-eval" : "density", ctx.get(), p, dens->parsed(), converged);
    emit(render(t), common.out);
    if (!converged) {
      std::cerr << fracevo_cli::error_record("non_convergence", fracevo_cli::kExitNumerical,
                                             "series did not reach the requested tolerance for at least one point");
      return fracevo_cli::kExitNumerical;
    }
    return fracevo_cli::kExitOk;
  }

  if (sub->parsed()) {
    fracevo_status failure = FRACEVO_OK;
    const Table t = subordinate_table(ctx.get(), p, failure);
    emit(render(t), common.out);
    if (failure != FRACEVO_OK) {
      const int code = fracevo_cli::exit_code_for(failure);
      std::cerr << fracevo_cli::error_record(fracevo_status_string(failure), code, fracevo_last_error(ctx.get()));
      return code;
    }
    return fracevo_cli::kExitOk;
  }

  if (diff->parsed()) {
    emit(render(diffusion_table(ctx.get(), p)), common.out);
    return fracevo_cli::kExitOk;
  }

  emit(render(bs_table(ctx.get(), p)), common.out);
  return fracevo_cli::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CliError& e) {
    std::cerr << fracevo_cli::error_record(e.status(), e.exit_code(), e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << fracevo_cli::error_record("internal_error", fracevo_cli::kExitNumerical, e.what());
    return fracevo_cli::kExitNumerical;
  }
}
