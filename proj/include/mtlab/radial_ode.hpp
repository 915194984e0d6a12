#pragma once

// Initial-value integration of radial equations -Lu = f(r, u), L the radial
// Laplacian u'' + u'/r, written in the log-radius t = log r as
//
//   du/dt = v,   dv/dt = -e^{2t} f(e^t, u),   v = r u'(r).
//
// Integration starts from a Taylor expansion at r_start and uses the
// Dormand-Prince 5(4) pair with its continuous extension, so the solution can
// be evaluated anywhere between nodes.

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace mtlab {

/// Integrand of an auxiliary quadrature carried along with the ODE state;
/// returns d(aux)/dt at (t, u, v).
using AuxIntegrand = std::function<double(double t, double u, double v)>;

struct IvpSpec {
  /// -Lu as a function of (r, u). Must be defined at r = 0.
  std::function<double(double r, double u)> rhs;
  /// Optional e^{2t} rhs(e^t, u), for right sides that are only safe to
  /// evaluate with exponents combined. Used in place of rhs for t-stepping.
  std::function<double(double t, double u)> weighted_rhs;
  double u0 = 0.0;        ///< u(0)
  double t_end = 0.0;     ///< log of the final radius
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  double r_start = 1e-6;  ///< series-start radius
  double max_step = 1.0;  ///< in t
  std::vector<AuxIntegrand> aux;
  long max_steps = 2'000'000;
};

struct LogRadialGrid {
  std::vector<double> t_nodes;
  double r_start = 0.0;
};

class RadialSolution {
 public:
  LogRadialGrid grid;
  std::vector<double> values;    ///< u at the nodes
  std::vector<double> r_derivs;  ///< r u'(r) at the nodes
  std::vector<std::vector<double>> aux;  ///< aux[k][node]
  double u_origin = 0.0;
  double laplacian_origin = 0.0;  ///< Lu(0) = -rhs(0, u0)

  std::size_t size() const { return values.size(); }
  std::size_t aux_count() const { return aux.size(); }
  double t_begin() const { return grid.t_nodes.front(); }
  double t_end() const { return grid.t_nodes.back(); }

  /// Full state (u, v, aux...) at log-radius t, via the continuous extension.
  std::vector<double> state_at(double t) const;
  double value_at(double t) const { return component_at(0, t); }
  double rderiv_at(double t) const { return component_at(1, t); }
  double aux_at(std::size_t k, double t) const { return component_at(2 + k, t); }
  /// d/dt of a component, from the derivative of the continuous extension.
  double slope_at(std::size_t c, double t) const;
  /// u(r) for any r in [0, r_end]; below r_start the Taylor start is used.
  double value_at_r(double r) const;
  /// r u'(r) for any r in [0, r_end].
  double rderiv_at_r(double r) const;

  /// Copy with u shifted by a constant (nodes and continuous extension).
  RadialSolution shifted(double delta) const;

  // Continuous-extension data, one record per accepted step.
  struct Segment {
    double t0 = 0.0;
    double h = 0.0;
    std::vector<double> coeffs;  ///< 5 coefficients per state component
  };
  std::vector<Segment> segments;
  std::size_t dimension = 2;

  /// Extension segment covering t; throws std::out_of_range outside.
  const Segment& segment_for(double t) const;

 private:
  double component_at(std::size_t c, double t) const;
  double clamp_log_radius(double r) const;
};

/// Second-order Taylor start: u(r_s) = u0 + Lu(0) r_s^2 / 4, and
/// r_s u'(r_s) = Lu(0) r_s^2 / 2, where Lu(0) = -rhs(0, u0).
std::pair<double, double> series_start(const IvpSpec& spec);

/// Integrate from r_start to t_end.
RadialSolution integrate(const IvpSpec& spec);

struct EventResult {
  double t_star = 0.0;
  RadialSolution solution;  ///< truncated at t_star
};

/// Integrate until u crosses `level`, then locate the crossing by bisection
/// on the continuous extension. Throws NoCrossing if t_end is reached first.
EventResult find_event(const IvpSpec& spec, double level);

}  // namespace mtlab
