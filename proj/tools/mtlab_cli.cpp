// Command-line front end. Exit codes: 0 ok, 2 configuration error,
// 3 numerical failure, 4 a requested check did not hold.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mtlab/analysis.hpp"
#include "mtlab/errors.hpp"
#include "mtlab/io.hpp"
#include "mtlab/linearized.hpp"
#include "mtlab/maximizer.hpp"
#include "mtlab/perturbations.hpp"
#include "mtlab/profiles.hpp"
#include "mtlab/quadrature.hpp"
#include "mtlab/shooting.hpp"

using namespace mtlab;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitCheck = 4;
constexpr double kPi = std::numbers::pi;

struct FamilyArgs {
  std::string name = "none";
  std::optional<double> a, p, q, R;

  PerturbationSpec build() const {
    std::map<std::string, double> params;
    if (a) params["a"] = *a;
    if (p) params["p"] = *p;
    if (q) params["q"] = *q;
    if (R) params["R"] = *R;
    return make_family(name, params);
  }
};

void add_family_options(CLI::App* cmd, FamilyArgs& f) {
  cmd->add_option("--family", f.name, "none, power-log, oscillating, inverse-square")->capture_default_str();
  cmd->add_option("--a", f.a, "family amplitude");
  cmd->add_option("--p", f.p, "decay exponent");
  cmd->add_option("--q", f.q, "log power (power-log)");
  cmd->add_option("--R", f.R, "cutoff scale");
}

struct Output {
  std::string path;
  std::string format = "csv";

  std::ostream& stream() {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw std::invalid_argument("cannot open output file " + path);
    return file;
  }
  std::ofstream file;
};

void add_output_options(CLI::App* cmd, Output& o) {
  cmd->add_option("-o,--output", o.path, "output file, default stdout");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

void emit_json(Output& o, const nlohmann::ordered_json& j) { o.stream() << j.dump(2) << '\n'; }

int run_profiles(double r_max, int points, Output& out) {
  if (!(r_max > 0.0) || points < 2) throw std::invalid_argument("need r_max > 0 and points >= 2");
  CsvTable t({"r", "eta0", "w0", "zeta0", "psi0", "xi"});
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < points; ++i) {
    // r = 0 then log spacing from 1e-3 to r_max
    const double r = i == 0 ? 0.0 : 1e-3 * std::pow(r_max / 1e-3, (i - 1.0) / (points - 2.0));
    t.row().add(r).add(eta0(r)).add(w0(r)).add(zeta0(r)).add(psi0(r)).add(xi(r));
    rows.push_back({{"r", r}, {"eta0", eta0(r)}, {"w0", w0(r)}, {"zeta0", zeta0(r)}, {"psi0", psi0(r)}, {"xi", xi(r)}});
  }
  if (out.format == "json") emit_json(out, rows);
  else t.write(out.stream());
  return 0;
}

int run_tables(double tol, Output& out) {
  const auto rows = integral_tables(tol);
  const auto beta = z0_beta_combination(rows);
  const auto sum = perturbation_table_sum(rows);
  CsvTable t({"name", "closed_form", "numeric", "abs_error"});
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    t.row().add(r.name).add(r.closed_form).add(r.numeric.value).add(r.numeric.abs_error);
    j.push_back({{"name", r.name}, {"closed_form", r.closed_form}, {"numeric", r.numeric.value},
                 {"abs_error", r.numeric.abs_error}});
  }
  t.row().add("beta_z0_combination").add(beta.exact).add(beta.numeric).add(beta.abs_error);
  t.row().add("inverse_square_sum").add(sum.exact).add(sum.numeric).add(sum.abs_error);
  j.push_back({{"name", "beta_z0_combination"}, {"closed_form", beta.exact}, {"numeric", beta.numeric},
               {"abs_error", beta.abs_error}, {"rational", beta.one}, {"pi2", beta.pi2}, {"pi4", beta.pi4},
               {"zeta3", beta.zeta3}});
  j.push_back({{"name", "inverse_square_sum"}, {"closed_form", sum.exact}, {"numeric", sum.numeric},
               {"abs_error", sum.abs_error}});
  if (out.format == "json") emit_json(out, j);
  else t.write(out.stream());
  return 0;
}

int run_beta(Output& out) {
  const auto slope = extract_log_slope(z0_solution(), 1e4, 1e8);
  const auto quad = beta_from_source(
      [](double r) { return source_value(SourceId::z0(), r); });
  const double exact = -6.0 - kPi * kPi / 3.0;
  CsvTable t({"method", "beta", "error_estimate", "deviation_from_closed_form"});
  t.row().add("tail_slope").add(slope.beta_hat).add(slope.error_estimate).add(slope.beta_hat - exact);
  t.row().add("weighted_integral").add(quad.value).add(quad.abs_error).add(quad.value - exact);
  t.row().add("closed_form").add(exact).add(0.0).add(0.0);
  if (out.format == "json") {
    emit_json(out, {{"tail_slope", slope.beta_hat}, {"tail_slope_error", slope.error_estimate},
                    {"weighted_integral", quad.value}, {"weighted_integral_error", quad.abs_error},
                    {"closed_form", exact}});
  } else {
    t.write(out.stream());
  }
  return std::abs(slope.beta_hat - quad.value) <= slope.error_estimate + quad.abs_error + 1e-3 ? 0 : kExitCheck;
}

int run_shoot(double mu, const FamilyArgs& fam, double tol, Output& out) {
  ShotOptions opts;
  opts.tol = tol;
  const auto sol = shoot(mu, fam.build(), opts);
  const double res = pde_residual(sol);
  if (out.format == "json") {
    emit_json(out, shot_json(sol, res));
    return 0;
  }
  CsvTable t({"mu", "log_R", "log_lambda", "energy", "energy_inner", "energy_outer", "c", "moser_integral",
              "pde_residual"});
  t.row().add(mu).add(sol.log_R).add(sol.log_lambda).add(sol.energy_total).add(sol.energy_inner)
      .add(sol.energy_outer).add(std::pow(mu, 4) * (sol.energy_total - 4.0 * kPi)).add(sol.moser_integral).add(res);
  t.write(out.stream());
  return 0;
}

int run_scan(double from, double to, int steps, const FamilyArgs& fam, bool check, Output& out) {
  if (steps < 1 || !(to >= from)) throw std::invalid_argument("need --steps >= 1 and --mu-to >= --mu-from");
  std::vector<double> mus;
  for (int i = 0; i <= steps; ++i) mus.push_back(from + (to - from) * i / steps);
  const auto spec = fam.build();
  const auto scan = energy_scan(mus, spec);
  for (const auto& f : scan.failures) std::cerr << "shot failed: " << f << '\n';
  CsvTable t({"mu", "energy", "c", "inner_coeff", "outer_coeff", "window_lo", "window_hi", "in_window"});
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < scan.mu_values.size(); ++i) {
    t.row().add(scan.mu_values[i]).add(scan.energies[i]).add(scan.c_values[i]).add(scan.inner_coeffs[i])
        .add(scan.outer_coeffs[i]).add(scan.window.lo - kCoefficientSlack).add(scan.window.hi + kCoefficientSlack)
        .add(static_cast<bool>(scan.in_window[i]));
    j.push_back({{"mu", scan.mu_values[i]}, {"energy", scan.energies[i]}, {"c", scan.c_values[i]},
                 {"inner_coeff", scan.inner_coeffs[i]}, {"outer_coeff", scan.outer_coeffs[i]},
                 {"in_window", static_cast<bool>(scan.in_window[i])}});
  }
  if (out.format == "json") emit_json(out, j);
  else t.write(out.stream());
  if (!scan.failures.empty()) return kExitNumerical;
  if (check && !scan.all_in_window()) {
    std::cerr << "check failed: c(mu) outside [" << scan.window.lo - kCoefficientSlack << ", "
              << scan.window.hi + kCoefficientSlack << "]\n";
    return kExitCheck;
  }
  return 0;
}

int run_residuals(double mu, const FamilyArgs& fam, Output& out) {
  const auto spec = fam.build();
  const auto rep = residual_hierarchy(mu, spec);
  const auto sol = shoot(mu, spec);
  const auto pde = pde_residual_report(sol, default_residual_radii(sol));
  const auto cmp = comparison_eta0(sol);
  if (out.format == "json") {
    auto j = hierarchy_json(rep);
    j["pde_residual"] = pde.max_residual;
    j["pde_samples_used"] = pde.samples_used;
    j["eta_below_eta0"] = cmp.holds;
    j["eta_minus_eta0_max"] = cmp.max_excess;
    emit_json(out, j);
    return 0;
  }
  CsvTable t({"mu", "sup_w_err", "sup_z_err", "phi_over_xi", "phi_range", "perturbed_ratio", "delta",
              "pde_residual", "eta_below_eta0"});
  t.row().add(mu).add(rep.sup_w_err).add(rep.sup_z_err).add(rep.phi_over_xi).add(rep.phi_range)
      .add(rep.perturbed_ratio).add(rep.delta).add(pde.max_residual).add(cmp.holds);
  t.write(out.stream());
  return 0;
}

int run_branch(const std::vector<double>& lambdas, double mu_max, const FamilyArgs& fam, Output& out) {
  std::vector<double> grid;
  for (double mu : default_branch_grid())
    if (mu <= mu_max) grid.push_back(mu);
  const auto scan = branch_scan(grid, fam.build(), lambdas);
  for (const auto& f : scan.failures) std::cerr << "shot failed: " << f << '\n';
  if (out.format == "json") {
    nlohmann::ordered_json j;
    j["lambda_star"] = scan.lambda_star;
    j["mu_star"] = scan.mu_star;
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const auto& p : scan.points) pts.push_back({{"mu", p.mu}, {"energy", p.energy}});
    j["points"] = pts;
    nlohmann::ordered_json qs = nlohmann::ordered_json::array();
    for (const auto& q : scan.queries) {
      nlohmann::ordered_json roots = nlohmann::ordered_json::array();
      for (const auto& r : q.roots)
        roots.push_back({{"mu", r.mu}, {"energy", r.energy}, {"pde_residual", r.residual}, {"verified", r.verified}});
      qs.push_back({{"lambda", q.lambda}, {"roots", roots}, {"note", q.note}});
    }
    j["queries"] = qs;
    emit_json(out, j);
    return 0;
  }
  CsvTable t({"kind", "lambda", "mu", "energy", "pde_residual", "verified"});
  t.row().add("max").add(scan.lambda_star).add(scan.mu_star).add(scan.lambda_star).add(0.0).add(true);
  for (const auto& q : scan.queries)
    for (const auto& r : q.roots) t.row().add("root").add(q.lambda).add(r.mu).add(r.energy).add(r.residual).add(r.verified);
  for (const auto& p : scan.points) t.row().add("grid").add(0.0).add(p.mu).add(p.energy).add(0.0).add(true);
  t.write(out.stream());
  return 0;
}

int run_maximize(double alpha, const FamilyArgs& fam, const MaximizerOptions& opts, Output& out) {
  const auto spec = fam.build();
  const auto res = maximize_subcritical(alpha, spec, opts);
  const auto m = multiplier_estimate(res, spec);
  const auto bound = pointwise_moser_bound(res);
  if (out.format == "json") {
    auto j = maximizer_json(res, m);
    j["moser_bound_holds"] = bound.holds;
    emit_json(out, j);
  } else {
    CsvTable t({"r", "u"});
    for (std::size_t i : downsample_indices(res.field.size(), 2048))
      t.row().add(std::exp(res.field.t[i])).add(res.field.values[i]);
    t.write(out.stream());
    std::cerr << "alpha=" << format_real(alpha) << " F=" << format_real(res.value)
              << " lambda_hat=" << format_real(m.lambda_hat) << " residual=" << format_real(m.residual)
              << " iterations=" << res.iterations << '\n';
  }
  if (!res.converged) {
    std::cerr << "maximizer did not converge; best iterate returned\n";
    return kExitNumerical;
  }
  if (!m.resolved || !m.in_window || !bound.holds) {
    std::cerr << "check failed: multiplier " << (m.in_window ? "in" : "outside") << " window, residual "
              << format_real(m.residual) << ", Moser bound " << (bound.holds ? "holds" : "violated") << '\n';
    return kExitCheck;
  }
  return 0;
}

int run_check_h(const FamilyArgs& fam, Output& out) {
  const auto spec = fam.build();
  const auto reps = check_conditions(spec);
  if (out.format == "json") {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : reps)
      j.push_back({{"name", r.name}, {"description", r.description}, {"verdict", verdict_name(r.verdict)},
                   {"tail_ratio", r.tail_ratio}});
    emit_json(out, j);
    return 0;
  }
  auto& os = out.stream();
  for (const auto& r : reps)
    os << r.name << " (" << r.description << "): " << verdict_name(r.verdict) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial Moser-Trudinger critical points: profiles, shooting, scans, maximization"};
  app.require_subcommand(1);

  Output out;
  FamilyArgs fam;

  double r_max = 1e3;
  int points = 200;
  auto* c_profiles = app.add_subcommand("profiles", "tabulate eta0, w0, zeta0, psi0, xi");
  c_profiles->add_option("--r-max", r_max)->capture_default_str();
  c_profiles->add_option("--points", points)->capture_default_str();
  add_output_options(c_profiles, out);

  double table_tol = 1e-11;
  auto* c_tables = app.add_subcommand("tables", "quadrature integral tables with closed forms");
  c_tables->add_option("--tol", table_tol)->capture_default_str();
  add_output_options(c_tables, out);

  auto* c_beta = app.add_subcommand("beta", "z0 log slope by tail fit and by weighted integral");
  add_output_options(c_beta, out);

  double mu = 6.0;
  double tol = kShotTolerance;
  auto* c_shoot = app.add_subcommand("shoot", "one radial critical point");
  c_shoot->add_option("--mu", mu)->required();
  c_shoot->add_option("--tol", tol)->capture_default_str();
  add_family_options(c_shoot, fam);
  add_output_options(c_shoot, out);

  double mu_from = 6.0, mu_to = 12.0;
  int steps = 6;
  bool check = false;
  auto* c_scan = app.add_subcommand("scan", "energy expansion coefficient c(mu)");
  c_scan->add_option("--mu-from", mu_from)->capture_default_str();
  c_scan->add_option("--mu-to", mu_to)->capture_default_str();
  c_scan->add_option("--steps", steps)->capture_default_str();
  c_scan->add_flag("--check", check, "exit 4 if some c(mu) leaves the window");
  add_family_options(c_scan, fam);
  add_output_options(c_scan, out);

  auto* c_res = app.add_subcommand("residuals", "expansion residuals at one mu");
  c_res->add_option("--mu", mu)->required();
  add_family_options(c_res, fam);
  add_output_options(c_res, out);

  std::vector<double> lambdas;
  double mu_max = 20.0;
  auto* c_branch = app.add_subcommand("branch", "E(mu) branch, its maximum and level-set roots");
  c_branch->add_option("--lambda", lambdas, "energy levels to solve E(mu) = lambda for");
  c_branch->add_option("--mu-max", mu_max)->capture_default_str();
  add_family_options(c_branch, fam);
  add_output_options(c_branch, out);

  double alpha = 0.5 * 4.0 * kPi;
  MaximizerOptions mopts;
  auto* c_max = app.add_subcommand("maximize", "subcritical constrained maximization");
  c_max->add_option("--alpha", alpha)->required();
  c_max->add_option("--nodes", mopts.nodes)->capture_default_str();
  c_max->add_option("--r-min", mopts.r_min)->capture_default_str();
  c_max->add_option("--tol", mopts.tol)->capture_default_str();
  c_max->add_option("--max-iterations", mopts.max_iterations)->capture_default_str();
  c_max->add_option("--start", mopts.start)->check(CLI::IsMember({"best", "moser", "parabolic"}))->capture_default_str();
  add_family_options(c_max, fam);
  add_output_options(c_max, out);

  auto* c_check = app.add_subcommand("check-h", "sampled decay conditions on h");
  add_family_options(c_check, fam);
  add_output_options(c_check, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (c_profiles->parsed()) return run_profiles(r_max, points, out);
    if (c_tables->parsed()) return run_tables(table_tol, out);
    if (c_beta->parsed()) return run_beta(out);
    if (c_shoot->parsed()) return run_shoot(mu, fam, tol, out);
    if (c_scan->parsed()) return run_scan(mu_from, mu_to, steps, fam, check, out);
    if (c_res->parsed()) return run_residuals(mu, fam, out);
    if (c_branch->parsed()) return run_branch(lambdas, mu_max, fam, out);
    if (c_max->parsed()) return run_maximize(alpha, fam, mopts, out);
    if (c_check->parsed()) return run_check_h(fam, out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitConfig;
}
