#pragma once

// Radial critical points by shooting. For a centre value mu the rescaled
// profile eta(x) = mu (u(x/R) - mu) solves
//
//   -L eta = 4 (1 + h(u)) (1 + eta/mu^2) e^{2 eta + eta^2/mu^2},  u = mu + eta/mu,
//
// from eta(0) = 0 until eta = -mu^2, which places the boundary at log R.
// R and the multiplier lambda are only ever held as logarithms.

#include <functional>
#include <vector>

#include "mtlab/constants.hpp"
#include "mtlab/perturbations.hpp"
#include "mtlab/radial_ode.hpp"

namespace mtlab {

struct ShotOptions {
  double tol = kShotTolerance;
  double split_exponent = kSplitExponent;  ///< inner disk radius mu^p in rescaled units
  double r_start = 1e-6;
  double max_step = 1.0;
};

struct ShotSolution {
  double mu = 0.0;
  double log_R = 0.0;
  double log_lambda = 0.0;
  double energy_total = 0.0;  ///< int lambda (1 + h(u)) u^2 e^{u^2} dx over B_1
  double energy_inner = 0.0;  ///< same over B_{mu^p / R}
  double energy_outer = 0.0;
  double moser_integral = 0.0;  ///< int_{B_1} e^{u^2} dx
  double split_exponent = kSplitExponent;
  double tol = kShotTolerance;
  RadialSolution eta;  ///< aux 0: energy, aux 1: scaled Moser integral
  PerturbationSpec perturbation;
};

ShotSolution shoot(double mu, const PerturbationSpec& spec, const ShotOptions& options = {});

/// Energy carried by the rescaled disk of radius rho, i.e. the physical disk
/// of radius rho / R. rho beyond R is clamped to R.
double energy_within(const ShotSolution& sol, double rho);

/// u at the physical radius r in [0, 1].
double physical_profile(const ShotSolution& sol, double r_phys);

/// Physical radii in (0, 1) at which the residual is sampled by default:
/// 200 points uniform in log-radius over the resolved range.
std::vector<double> default_residual_radii(const ShotSolution& sol, int count = 200);

struct ResidualReport {
  double max_residual = 0.0;
  double worst_radius = 0.0;
  int samples_used = 0;
  /// Samples where the slope of the stored r u' cannot resolve Lu to a
  /// hundredth of the residual tolerance (far field, where Lu is below the
  /// rounding level of r u').
  int samples_unresolved = 0;
};

/// |Lu + lambda (1 + h(u)) u e^{u^2}| / (1 + |Lu|) at each sample radius.
/// Lu is the slope of the continuous extension of r u'; both sides are
/// combined in log scale.
ResidualReport pde_residual_report(const ShotSolution& sol, const std::vector<double>& radii);

/// Maximum over the resolved samples; throws NumericalError if none is.
double pde_residual(const ShotSolution& sol, const std::vector<double>& radii);
double pde_residual(const ShotSolution& sol);

struct ComparisonReport {
  bool holds = true;
  int samples = 0;
  double first_violation_r = 0.0;  ///< rescaled radius, 0 when none
  double max_excess = 0.0;          ///< max (eta - eta0), may be negative
};

/// eta <= eta0 on a 400-point log grid of [mu^2, R] (rescaled radii).
ComparisonReport comparison_eta0(const ShotSolution& sol);
/// Same test for an arbitrary profile given as a function of t = log r.
ComparisonReport compare_with_eta0(const std::function<double(double)>& eta_of_t, double mu,
                                   double log_R, int samples = 400);

/// eta0(e^t) without overflow.
double eta0_log(double t);

}  // namespace mtlab
