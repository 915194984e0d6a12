#include "mtlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mtlab/constants.hpp"
#include "mtlab/errors.hpp"
#include "mtlab/linearized.hpp"
#include "mtlab/profiles.hpp"

namespace mtlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4.0 * kPi;

double tail_coefficient(const PerturbationSpec& spec) {
  if (spec.family == "inverse-square" && !spec.trivial) return spec.params.at("a");
  return 0.0;
}

double coefficient(double mu, double energy) { return std::pow(mu, 4) * (energy - kFourPi); }

}  // namespace

CoefficientWindow coefficient_window(const PerturbationSpec& spec) {
  const double a = tail_coefficient(spec);
  const double sup_h = spec.trivial ? 0.0 : spec.sup_h;
  return {kFourPi - kFourPi * a, kFourPi + 2.0 * kPi * (1.0 + sup_h) - kFourPi * a};
}

bool ExpansionScan::all_in_window() const {
  return failures.empty() && std::all_of(in_window.begin(), in_window.end(), [](bool b) { return b; });
}

std::vector<double> fit_inverse_square(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit needs two or more points");
  // normal equations for y = a + b s, s = 1/x^2
  double n = 0, ss = 0, sy = 0, sss = 0, ssy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double s = 1.0 / (x[i] * x[i]);
    n += 1;
    ss += s;
    sy += y[i];
    sss += s * s;
    ssy += s * y[i];
  }
  const double det = n * sss - ss * ss;
  if (det == 0.0) throw std::invalid_argument("fit abscissae must differ");
  const double b = (n * ssy - ss * sy) / det;
  const double a = (sy - b * ss) / n;
  double res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    res = std::max(res, std::abs(y[i] - a - b / (x[i] * x[i])));
  return {a, b, res};
}

ExpansionScan energy_scan(const std::vector<double>& mu_list, const PerturbationSpec& spec,
                          const ShotOptions& options) {
  ExpansionScan scan;
  scan.window = coefficient_window(spec);
  std::vector<double> mus(mu_list);
  std::sort(mus.begin(), mus.end());
  for (double mu : mus) {
    try {
      const auto sol = shoot(mu, spec, options);
      const double c = coefficient(mu, sol.energy_total);
      scan.mu_values.push_back(mu);
      scan.energies.push_back(sol.energy_total);
      scan.c_values.push_back(c);
      scan.inner_coeffs.push_back(coefficient(mu, sol.energy_inner));
      scan.outer_coeffs.push_back(std::pow(mu, 4) * sol.energy_outer);
      scan.in_window.push_back(c >= scan.window.lo - kCoefficientSlack &&
                               c <= scan.window.hi + kCoefficientSlack);
    } catch (const NumericalError& e) {
      std::ostringstream msg;
      msg << "mu=" << mu << ": " << e.what();
      scan.failures.push_back(msg.str());
    }
  }
  if (scan.mu_values.size() >= 2) {
    const auto fit = fit_inverse_square(scan.mu_values, scan.c_values);
    scan.c_inf = fit[0];
    scan.c1 = fit[1];
    scan.fit_residual = fit[2];
  }
  return scan;
}

HierarchyReport residual_hierarchy(double mu, const PerturbationSpec& spec, const ShotOptions& options) {
  const auto sol = shoot(mu, spec, options);
  const auto& z0 = z0_solution();
  const double m2 = mu * mu, m4 = m2 * m2, m6 = m4 * m2;
  HierarchyReport rep;
  rep.mu = mu;
  auto eta = [&](double r) { return sol.eta.value_at_r(r); };

  // [0, 10]: the origin plus a log grid
  for (int i = 0; i <= 2000; ++i) {
    const double r = i == 0 ? 0.0 : 10.0 * std::pow(10.0, -6.0 * (1.0 - (i - 1) / 1999.0));
    const double d = eta(r) - eta0(r);
    const double w = w0(r);
    rep.sup_w_err = std::max(rep.sup_w_err, std::abs(m2 * d - w));
    rep.sup_z_err = std::max(rep.sup_z_err, std::abs(m4 * (d - w / m2) - z0.value_at_r(r)));
  }

  // [0, e^mu], limited by the range of the z0 solution and by R
  const double top = std::min({mu, std::log(1e8), sol.log_R});
  rep.phi_range = std::exp(top);
  for (int i = 0; i <= 4000; ++i) {
    const double r = i == 0 ? 0.0 : std::exp(std::log(1e-4) + (top - std::log(1e-4)) * (i - 1) / 3999.0);
    const double rest = eta(r) - eta0(r) - w0(r) / m2 - z0.value_at_r(r) / m4;
    rep.phi_over_xi = std::max(rep.phi_over_xi, m6 * std::abs(rest) / xi(r));
  }

  if (!spec.trivial) {
    rep.delta = delta_k(mu, spec);
    const double hmu = spec.h_at(mu);
    const double top4 = std::min({4.0 * std::log(mu), std::log(1e8), sol.log_R});
    for (int i = 0; i <= 4000; ++i) {
      const double r = i == 0 ? 0.0 : std::exp(std::log(1e-4) + (top4 - std::log(1e-4)) * (i - 1) / 3999.0);
      const double rest = eta(r) - eta0(r) - w0(r) / m2 - z0.value_at_r(r) / m4 - hmu * zeta0(r);
      rep.perturbed_ratio = std::max(rep.perturbed_ratio, std::abs(rest) / (rep.delta * xi(r)));
    }
  }
  return rep;
}

ThresholdReport threshold_a(double mu_probe, double R, double a_max, double a_tol,
                            const ShotOptions& options) {
  if (!(a_max > 0.0) || !(a_tol > 0.0)) throw std::invalid_argument("bad bisection range");
  ThresholdReport rep;
  rep.mu_probe = mu_probe;
  auto c_of = [&](double a) {
    ++rep.shots;
    const auto spec = make_family("inverse-square", {{"a", a}, {"R", R}});
    return coefficient(mu_probe, shoot(mu_probe, spec, options).energy_total);
  };
  rep.c_at_zero = c_of(0.0);
  rep.c_at_max = c_of(a_max);
  if (!(rep.c_at_zero > 0.0) || !(rep.c_at_max < 0.0)) {
    std::ostringstream msg;
    msg << "no sign change of c on [0, " << a_max << "]: c(0)=" << rep.c_at_zero
        << ", c(a_max)=" << rep.c_at_max;
    throw NumericalError(msg.str());
  }
  double lo = 0.0, hi = a_max;
  while (hi - lo > a_tol) {
    const double mid = 0.5 * (lo + hi);
    (c_of(mid) > 0.0 ? lo : hi) = mid;
  }
  rep.a_crit = 0.5 * (lo + hi);
  // h <= 0 for this family, so sup h = 0 and the upper end is 3/2
  const auto spec = make_family("inverse-square", {{"a", rep.a_crit}, {"R", R}});
  rep.window_lo = 1.0;
  rep.window_hi = 1.5 + spec.sup_h / 2.0;
  return rep;
}

std::vector<double> default_branch_grid() {
  std::vector<double> g;
  for (int i = 0;; ++i) {
    const double mu = 0.1 + 0.25 * i;
    if (mu > 20.0) break;
    g.push_back(mu);
  }
  if (g.back() < 20.0) g.push_back(20.0);
  return g;
}

BranchScan branch_scan(const std::vector<double>& mu_grid, const PerturbationSpec& spec,
                       const std::vector<double>& lambda_queries, const ShotOptions& options) {
  BranchScan scan;
  std::vector<double> grid(mu_grid);
  std::sort(grid.begin(), grid.end());
  for (double mu : grid) {
    try {
      scan.points.push_back({mu, shoot(mu, spec, options).energy_total});
    } catch (const NumericalError& e) {
      std::ostringstream msg;
      msg << "mu=" << mu << ": " << e.what();
      scan.failures.push_back(msg.str());
    }
  }
  if (scan.points.size() < 3) throw NumericalError("branch scan needs at least three successful shots");
  auto energy = [&](double mu) { return shoot(mu, spec, options).energy_total; };

  // golden-section refinement around the best grid sample
  std::size_t best = 0;
  for (std::size_t i = 1; i < scan.points.size(); ++i)
    if (scan.points[i].energy > scan.points[best].energy) best = i;
  double a = scan.points[best == 0 ? 0 : best - 1].mu;
  double b = scan.points[std::min(best + 1, scan.points.size() - 1)].mu;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = energy(x1), f2 = energy(x2);
  while (b - a > 1e-7) {
    if (f1 > f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = energy(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = energy(x2);
    }
  }
  scan.mu_star = f1 > f2 ? x1 : x2;
  scan.lambda_star = std::max({f1, f2, scan.points[best].energy});
  if (scan.points[best].energy >= std::max(f1, f2)) scan.mu_star = scan.points[best].mu;

  // bracket list: grid points with the refined maximum inserted
  std::vector<BranchPoint> nodes(scan.points);
  nodes.push_back({scan.mu_star, scan.lambda_star});
  std::sort(nodes.begin(), nodes.end(), [](const BranchPoint& p, const BranchPoint& q) { return p.mu < q.mu; });

  for (double lam : lambda_queries) {
    BranchQuery q;
    q.lambda = lam;
    if (!(lam > kFourPi) || !(lam < scan.lambda_star)) {
      std::ostringstream msg;
      msg << "Lambda=" << lam << " outside (4 pi, Lambda*) = (" << kFourPi << ", " << scan.lambda_star << ")";
      q.note = msg.str();
      scan.queries.push_back(q);
      continue;
    }
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      double lo = nodes[i].mu, hi = nodes[i + 1].mu;
      double flo = nodes[i].energy - lam, fhi = nodes[i + 1].energy - lam;
      if (flo == 0.0 || (flo > 0.0) == (fhi > 0.0)) continue;
      double mid = 0.5 * (lo + hi), fmid = 0.0;
      for (int it = 0; it < 200; ++it) {
        mid = 0.5 * (lo + hi);
        fmid = energy(mid) - lam;
        if (std::abs(fmid) <= 0.5 * kBranchRootTolerance || hi - lo < 1e-14 * mid) break;
        if ((fmid > 0.0) == (flo > 0.0)) {
          lo = mid;
          flo = fmid;
        } else {
          hi = mid;
        }
      }
      BranchRoot root;
      root.mu = mid;
      const auto fresh = shoot(mid, spec, options);
      root.energy = fresh.energy_total;
      root.residual = pde_residual(fresh);
      root.verified = std::abs(root.energy - lam) <= kBranchRootTolerance && root.residual <= kResidualTolerance;
      q.roots.push_back(root);
    }
    if (q.roots.empty()) q.note = "no sign change of E - Lambda on the grid";
    scan.queries.push_back(q);
  }
  return scan;
}

ConcentrationReport concentration_check(double mu, double radius, const ShotOptions& options) {
  if (!(radius >= 0.0)) throw std::invalid_argument("radius must be non-negative");
  ConcentrationReport rep;
  rep.mu = mu;
  rep.radius = radius;
  rep.limit = kFourPi * radius * radius / (1.0 + radius * radius);
  if (radius == 0.0) return rep;
  const auto sol = shoot(mu, no_perturbation(), options);
  rep.energy = energy_within(sol, radius);
  rep.deviation = std::abs(rep.energy - rep.limit);
  return rep;
}

SubcriticalCheck subcritical_bound(const ShotSolution& sol) {
  SubcriticalCheck c;
  c.moser_integral = sol.moser_integral;
  c.applicable = sol.energy_total < kFourPi;
  if (c.applicable) {
    c.bound = kPi / (1.0 - sol.energy_total / kFourPi);
    c.holds = c.moser_integral <= c.bound;
  }
  return c;
}

}  // namespace mtlab
