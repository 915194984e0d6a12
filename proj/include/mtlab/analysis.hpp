#pragma once

// Energy expansion coefficients, residuals of the blow-up expansion,
// perturbation thresholds and the E(mu) branch.

#include <string>
#include <vector>

#include "mtlab/perturbations.hpp"
#include "mtlab/shooting.hpp"

namespace mtlab {

/// Window [lo, hi] for the limit of mu^4 (E - 4 pi), before slack.
///   no tail term:      [4 pi, 4 pi + 2 pi (1 + sup h)]
///   -a t^-2 tail:      both ends shifted by -4 pi a
struct CoefficientWindow {
  double lo = 0.0;
  double hi = 0.0;
};
CoefficientWindow coefficient_window(const PerturbationSpec& spec);

struct ExpansionScan {
  std::vector<double> mu_values;
  std::vector<double> energies;
  std::vector<double> c_values;      ///< mu^4 (E - 4 pi)
  std::vector<double> inner_coeffs;  ///< mu^4 (E_inner - 4 pi)
  std::vector<double> outer_coeffs;  ///< mu^4 E_outer
  std::vector<bool> in_window;       ///< c within the window widened by the slack
  std::vector<std::string> failures; ///< "mu=...: message" for shots that failed
  CoefficientWindow window;
  double c_inf = 0.0;  ///< fit c = c_inf + c1 / mu^2
  double c1 = 0.0;
  double fit_residual = 0.0;  ///< max |c - fit| over the fitted points
  bool all_in_window() const;
};

ExpansionScan energy_scan(const std::vector<double>& mu_list, const PerturbationSpec& spec,
                          const ShotOptions& options = {});

struct HierarchyReport {
  double mu = 0.0;
  double sup_w_err = 0.0;    ///< sup_[0,10] |mu^2 (eta - eta0) - w0|
  double sup_z_err = 0.0;    ///< sup_[0,10] |mu^4 (eta - eta0 - w0/mu^2) - z0|
  double phi_over_xi = 0.0;  ///< sup_[0,e^mu] mu^6 |eta - eta0 - w0/mu^2 - z0/mu^4| / xi
  double phi_range = 0.0;    ///< upper radius actually used for phi_over_xi
  /// Perturbed runs only: sup_[0,mu^4] |eta - eta0 - w0/mu^2 - z0/mu^4 - h(mu) zeta0| / (delta_k xi)
  double perturbed_ratio = 0.0;
  double delta = 0.0;
};
HierarchyReport residual_hierarchy(double mu, const PerturbationSpec& spec,
                                   const ShotOptions& options = {});

struct ThresholdReport {
  double mu_probe = 0.0;
  double a_crit = 0.0;
  double c_at_zero = 0.0;   ///< c(mu_probe) for a = 0
  double c_at_max = 0.0;    ///< c(mu_probe) for a = a_max
  double window_lo = 1.0;   ///< a where the lower window end 4 pi - 4 pi a vanishes
  double window_hi = 1.5;   ///< 3/2 + sup h / 2
  int shots = 0;
};

/// Bisection in a over [0, a_max] for the sign change of c(mu_probe) in the
/// family h = -a chi(t/R) t^-2.
ThresholdReport threshold_a(double mu_probe, double R = 2.5, double a_max = 3.0,
                            double a_tol = 1e-4, const ShotOptions& options = {});

struct BranchPoint {
  double mu = 0.0;
  double energy = 0.0;
};

struct BranchRoot {
  double mu = 0.0;
  double energy = 0.0;
  double residual = 0.0;  ///< pde_residual of a fresh shot at mu
  bool verified = false;
};

struct BranchQuery {
  double lambda = 0.0;
  std::vector<BranchRoot> roots;
  std::string note;  ///< why the list is empty, if it is
};

struct BranchScan {
  std::vector<BranchPoint> points;
  std::vector<std::string> failures;
  double lambda_star = 0.0;
  double mu_star = 0.0;
  std::vector<BranchQuery> queries;
};

/// Grid 0.1, 0.35, ..., 20 (step 0.25, end point included).
std::vector<double> default_branch_grid();

BranchScan branch_scan(const std::vector<double>& mu_grid, const PerturbationSpec& spec,
                       const std::vector<double>& lambda_queries, const ShotOptions& options = {});

/// Energy over the rescaled disk of radius R (physical radius R r_k).
struct ConcentrationReport {
  double mu = 0.0;
  double radius = 0.0;
  double energy = 0.0;
  double limit = 0.0;  ///< 4 pi R^2 / (1 + R^2)
  double deviation = 0.0;
};
ConcentrationReport concentration_check(double mu, double radius = 100.0,
                                        const ShotOptions& options = {});

/// int_{B_1} e^{u^2} <= pi / (1 - E / 4 pi), meaningful when E < 4 pi.
struct SubcriticalCheck {
  bool applicable = false;
  double moser_integral = 0.0;
  double bound = 0.0;
  bool holds = true;
};
SubcriticalCheck subcritical_bound(const ShotSolution& sol);

/// Least-squares fit y = a + b / x^2; returns {a, b, max residual}.
std::vector<double> fit_inverse_square(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace mtlab
