#pragma once

// Perturbations (g, h) of the exponential nonlinearity, h = g + g'/(2t), and
// sampled checks of the decay conditions imposed on h.

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace mtlab {

using RealRule = std::function<double(double)>;

/// chi(x): 0 on (-inf, 1], 1 on [2, inf), C-infinity bridge built from
/// exp(-1/y). Returns (chi, chi').
struct CutoffValue {
  double value = 0.0;
  double derivative = 0.0;
};
CutoffValue smooth_cutoff(double x);

struct PerturbationSpec {
  std::string family = "none";
  std::map<std::string, double> params;
  /// g on (0, inf), extended evenly; empty for h-only families.
  RealRule g;
  RealRule dg;
  /// h on (0, inf); h(0) is the limit value.
  RealRule h;
  double sup_h = 0.0;
  double inf_h = 0.0;
  double inf_g = 0.0;
  bool h_only = false;
  bool trivial = true;  ///< h == 0 identically

  double h_at(double t) const;
  /// g(t) for any real t via evenness. Throws for h-only families.
  double g_at(double t) const;
};

/// h(t) = g(t) + g'(t)/(2t); evaluating the result at t = 0 throws.
RealRule h_from_g(RealRule g, RealRule dg);

/// Families by name:
///   none
///   power-log       g = a chi(t/R) log^q(t) t^{-p}      (a, p, q, R)
///   oscillating     g = a chi(t/R) cos(log t) t^{-p}    (a, p, R)
///   inverse-square  h = -a chi(t/R) t^{-2}, h only      (a, R)
/// Unknown names or parameters, and specs with inf h <= -1, are rejected.
PerturbationSpec make_family(const std::string& name, const std::map<std::string, double>& params);
PerturbationSpec no_perturbation();

/// Recomputes sup_h, inf_h, inf_g on a 1e4-point log grid over [1e-3, 1e8]
/// together with the tail limit 0.
void compute_bounds(PerturbationSpec& spec);

/// g solving g' + 2t g = 2t h with g(0) = 0, g(t) = int_0^t 2s h(s) e^{s^2-t^2} ds.
/// Offered for h-only families as a labelled reconstruction.
double reconstruct_g(const PerturbationSpec& spec, double t);

enum class Verdict { Satisfied, Violated, Inconclusive };
const char* verdict_name(Verdict v);

struct ConditionReport {
  std::string name;
  std::string description;
  std::vector<double> t;
  std::vector<double> quantity;
  Verdict verdict = Verdict::Inconclusive;
  double tail_ratio = 0.0;  ///< envelope(last) / envelope(midpoint)
};

/// Log grid of `count` points on [t_lo, t_hi].
std::vector<double> log_grid(double t_lo, double t_hi, int count);

/// Two checks:
///   h_decay:  t^2 h(t) -> 0
///   h_shift:  t^4 sup_{|s|<=1} |h(t + s(8 log t + 1)/t) - h(t)| -> 0 (21-point s grid)
/// The verdict compares the running tail supremum at the last sample with
/// the one at the middle sample.
std::vector<ConditionReport> check_conditions(const PerturbationSpec& spec,
                                              const std::vector<double>& t_samples);
std::vector<ConditionReport> check_conditions(const PerturbationSpec& spec);

/// max{ sup_s |h(mu + s(8 log mu + 1)/mu) - h(mu)|, mu^-6, h(mu)/mu^2 } with
/// the supremum over a 201-point s grid.
double delta_k(double mu, const PerturbationSpec& spec);

}  // namespace mtlab
