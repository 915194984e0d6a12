#pragma once

// Constrained maximization of F(u) = int_{B_1} (1 + g(u)) e^{u^2} dx over
// radial u with u(1) = 0 and Dirichlet energy alpha < 4 pi. Fields are
// piecewise linear in t = log r on a log grid and constant on [0, r_min].

#include <string>
#include <vector>

#include "mtlab/perturbations.hpp"

namespace mtlab {

struct RadialField {
  std::vector<double> t;       ///< log r_i, increasing, last entry 0
  std::vector<double> values;  ///< u_i, last entry 0

  std::size_t size() const { return t.size(); }
  double r_min() const;
  /// u(r), piecewise linear in log r, constant below r_min.
  double value_at(double r) const;
};

RadialField make_log_grid_field(double r_min, int nodes);

/// 2 pi sum (u_{i+1} - u_i)^2 / (t_{i+1} - t_i)
double dirichlet_energy(const RadialField& f);

/// F(u) with 5-point Gauss per segment plus the inner disk.
double moser_functional(const RadialField& f, const PerturbationSpec& spec);

/// dF/du_i, i = 0..n-2 (the boundary value is fixed).
std::vector<double> functional_gradient(const RadialField& f, const PerturbationSpec& spec);

/// Tridiagonal stiffness matrix of the energy on the free nodes 0..n-2.
struct Tridiagonal {
  std::vector<double> lower, diag, upper;  ///< lower[i] couples i and i-1
  std::vector<double> apply(const std::vector<double>& x) const;
  std::vector<double> solve(const std::vector<double>& rhs) const;
};
Tridiagonal stiffness_matrix(const RadialField& f);
/// Consistent mass matrix int phi_i phi_j dx on the free nodes.
Tridiagonal mass_matrix(const RadialField& f);

/// Rescales u so that its energy equals alpha.
void project_to_energy(RadialField& f, double alpha);

struct MaximizerOptions {
  double r_min = 1e-8;
  int nodes = 4096;
  double tol = 1e-13;       ///< stop when the relative increase of F falls below
  int max_iterations = 20000;
  /// "best" runs both starts and keeps the larger value; "moser" or "parabolic" runs one.
  std::string start = "best";
};

struct MaximizerResult {
  RadialField field;
  double alpha = 0.0;
  double value = 0.0;
  double initial_value = 0.0;
  double lambda_hat = 0.0;
  double lambda_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string start;
  std::vector<double> value_history;  ///< F after each accepted step
};

/// Projected ascent with the H^1 Riesz representative of dF, backtracking
/// from a unit step by halving.
MaximizerResult maximize_subcritical(double alpha, const PerturbationSpec& spec,
                                     const MaximizerOptions& options = {});

struct MoserBoundReport {
  bool holds = true;
  double max_excess = 0.0;  ///< max of u^2 - (alpha/2pi) log(1/r)
  double worst_radius = 0.0;
};

/// u(r)^2 <= (alpha / 2 pi) log(1/r) + eps at every node. With alpha the
/// field's own energy this holds for any field; a field altered after
/// projection can fail it against the projected alpha.
MoserBoundReport pointwise_moser_bound(const RadialField& f, double alpha, double eps = 1e-8);
MoserBoundReport pointwise_moser_bound(const MaximizerResult& result, double eps = 1e-8);

struct MultiplierEstimate {
  double lambda_hat = 0.0;
  double residual = 0.0;   ///< |K u - lambda b/2| / |K u| over interior nodes
  double upper = 0.0;      ///< lambda_1(B_1) / (1 + inf h)
  bool in_window = false;  ///< 0 < lambda_hat < upper
  bool resolved = false;   ///< residual below 1e-6
};

/// Least-squares lambda in K u = lambda (1 + h(u)) u e^{u^2} (weak form).
MultiplierEstimate multiplier_estimate(const MaximizerResult& result, const PerturbationSpec& spec);
MultiplierEstimate multiplier_estimate(const RadialField& field, const PerturbationSpec& spec);

}  // namespace mtlab
