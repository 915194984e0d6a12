#pragma once

// Planar integrals of radial functions, int_{R^2} f dx = 2 pi int_0^inf f(r) r dr,
// the weighted-integral formula for the logarithmic slope, and the reference
// integral tables of the blow-up expansion.

#include <functional>
#include <string>
#include <vector>

namespace mtlab {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  long nodes_used = 0;
};

using RadialRule = std::function<double(double r)>;

/// Adaptive panels on [0, 1] in r and on [0, log R_c] in t = log r. R_c starts
/// at 1e4 and grows until the closed-form majorant C log^4 r / r^3 of the
/// discarded tail is below tol/2. Throws QuadratureFailure otherwise.
QuadratureResult integrate_plane(const RadialRule& f, double tol = 1e-11,
                                 double initial_cut = 1e4);

/// beta = -(2/pi) int psi0 f dx, with psi0 = (r^2 - 1)/(1 + r^2)^3.
QuadratureResult beta_from_source(const RadialRule& f, double tol = 1e-11);

struct Rational {
  long long num = 0;
  long long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// q0 + q2 pi^2 + q4 pi^4 + q3 zeta(3) with rational coefficients.
struct ClosedForm {
  Rational one;
  Rational pi2;
  Rational pi4;
  Rational zeta3;
  double value() const;
};

struct TableEntry {
  std::string name;
  /// Closed form of (2/pi) int psi0 * integrand dx.
  ClosedForm normalized;
  /// Reported values use this factor: 1 for (2/pi)-normalized entries,
  /// pi/2 for raw integrals.
  double scale = 1.0;
  RadialRule integrand;  ///< without the psi0 weight
  double closed_form_value() const { return scale * normalized.value(); }
};

struct TableRow {
  std::string name;
  double closed_form = 0.0;
  QuadratureResult numeric;
};

/// The six raw weighted integrals of the z0 slope computation followed by
/// the eight (2/pi)-normalized entries of the inverse-square perturbation.
const std::vector<TableEntry>& table_entries();

std::vector<TableRow> integral_tables(double tol = 1e-11);

/// Weights of the raw entries in the z0 source
/// w0 + 2 w0^2 + 4 eta0 w0 + 2 eta0^2 w0 + eta0^3 + eta0^4/2, in table order.
inline constexpr double kZ0SourceWeights[6] = {1.0, 0.5, 1.0, 4.0, 2.0, 2.0};

/// beta(z0) = -sum_i weight_i * normalized_i, both exactly (as rational
/// coefficients of 1, pi^2, pi^4, zeta(3)) and from the numeric rows.
struct BetaCombination {
  double one = 0.0;
  double pi2 = 0.0;
  double pi4 = 0.0;
  double zeta3 = 0.0;
  double exact = 0.0;
  double numeric = 0.0;
  double abs_error = 0.0;
};
BetaCombination z0_beta_combination(const std::vector<TableRow>& rows);

/// Sum of the seven inverse-square entries following norm:zeta0^2*psi0
/// (the coefficient of a in beta_1 / 2). Exact value -2.
struct TableSum {
  double exact = 0.0;
  double numeric = 0.0;
  double abs_error = 0.0;
};
TableSum perturbation_table_sum(const std::vector<TableRow>& rows);

inline constexpr double kZeta3 = 1.2020569031595942853997381615114;

}  // namespace mtlab
