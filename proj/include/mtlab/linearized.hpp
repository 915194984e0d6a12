#pragma once

// Zero-Cauchy-data radial solutions of the linearized Liouville family
//
//   -Lw = 4 e^{2 eta0} (f + 2w),   w(0) = w'(0) = 0,
//
// and extraction of the logarithmic slope beta in w(r) = beta log r + O(1).

#include <functional>
#include <string>

#include "mtlab/radial_ode.hpp"

namespace mtlab {

enum class SourceKind { W0, Z0, Zeta0, ZaMinusZ0, Custom };

struct SourceId {
  SourceKind kind = SourceKind::Zeta0;
  double a = 0.0;  ///< parameter of ZaMinusZ0
  std::function<double(double)> custom;
  std::string label;

  static SourceId w0();
  static SourceId z0();
  static SourceId zeta0();
  static SourceId za_minus_z0(double a);
  static SourceId custom_rule(std::function<double(double)> f, std::string label = "custom");
  /// eta0 + eta0^2 - a, whose solution is w0 - a zeta0.
  static SourceId wa(double a);
};

/// f(r) for the given source.
double source_value(const SourceId& src, double r);

/// Integrate out to r_max (at most 1e8) with local tolerance tol.
RadialSolution solve_linearized(const SourceId& src, double r_max = 1e6, double tol = 1e-12);

struct LogSlope {
  double beta_hat = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
};

/// Estimate beta as the median of r w'(r) over the upper half of a log grid
/// on [r_lo, r_hi]; the error estimate is the largest deviation from the
/// median there. `converged` reports error_estimate <= tol.
LogSlope extract_log_slope(const RadialSolution& sol, double r_lo, double r_hi,
                           double tol = 1e-3);

/// Shared high-accuracy solution for z0 on [0, 1e8], computed once.
const RadialSolution& z0_solution();

}  // namespace mtlab
