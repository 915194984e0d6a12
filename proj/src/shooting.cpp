#include "mtlab/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mtlab/errors.hpp"

namespace mtlab {

namespace {

constexpr double kPi = std::numbers::pi;

void require_mu(double mu) {
  if (!std::isfinite(mu) || mu < kMuMin || mu > kMuMax) {
    std::ostringstream msg;
    msg << "mu=" << mu << " outside [" << kMuMin << ", " << kMuMax << "]";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

double eta0_log(double t) {
  // -log(1 + e^{2t})
  return t > 0.0 ? -(2.0 * t + std::log1p(std::exp(-2.0 * t))) : -std::log1p(std::exp(2.0 * t));
}

ShotSolution shoot(double mu, const PerturbationSpec& spec, const ShotOptions& options) {
  require_mu(mu);
  if (!(options.tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const double m2 = mu * mu;
  const PerturbationSpec* p = &spec;
  auto factor = [p, mu, m2](double eta) { return (1.0 + p->h_at(mu + eta / mu)) * (1.0 + eta / m2); };

  IvpSpec ivp;
  ivp.rhs = [=](double, double eta) { return 4.0 * factor(eta) * std::exp(2.0 * eta + eta * eta / m2); };
  ivp.weighted_rhs = [=](double t, double eta) {
    return 4.0 * factor(eta) * std::exp(2.0 * t + 2.0 * eta + eta * eta / m2);
  };
  // energy density 4 (1 + h)(1 + eta/mu^2)^2 e^{2 eta + eta^2/mu^2} against 2 pi r^2 dt
  ivp.aux.push_back([=](double t, double eta, double) {
    const double s = 1.0 + eta / m2;
    return 2.0 * kPi * 4.0 * (1.0 + p->h_at(mu + eta / mu)) * s * s *
           std::exp(2.0 * t + 2.0 * eta + eta * eta / m2);
  });
  // e^{u^2} = e^{mu^2} e^{2 eta + eta^2/mu^2}; the e^{mu^2} R^-2 factor is applied afterwards
  ivp.aux.push_back([=](double t, double eta, double) {
    return 2.0 * kPi * std::exp(2.0 * t + 2.0 * eta + eta * eta / m2);
  });
  ivp.u0 = 0.0;
  ivp.t_end = 0.5 * m2 + 20.0;
  ivp.rel_tol = options.tol;
  // Every state component scales like r^2 near the origin and stays away
  // from zero afterwards, so the control is effectively relative.
  ivp.abs_tol = options.tol * 1e-12;
  ivp.r_start = options.r_start;
  ivp.max_step = options.max_step;

  EventResult ev;
  try {
    ev = find_event(ivp, -m2);
  } catch (const NoCrossing& e) {
    std::ostringstream msg;
    msg << "mu=" << mu << ": boundary event not reached (" << e.what() << ")";
    throw EventNotReached(msg.str());
  }

  ShotSolution out;
  out.mu = mu;
  out.log_R = ev.t_star;
  out.log_lambda = std::log(4.0) + 2.0 * out.log_R - m2 - 2.0 * std::log(mu);
  out.eta = std::move(ev.solution);
  out.perturbation = spec;
  out.split_exponent = options.split_exponent;
  out.tol = options.tol;
  out.energy_total = out.eta.aux.front().back();
  out.energy_inner = energy_within(out, std::pow(mu, options.split_exponent));
  out.energy_outer = out.energy_total - out.energy_inner;
  out.moser_integral = out.eta.aux[1].back() * std::exp(m2 - 2.0 * out.log_R);
  return out;
}

double energy_within(const ShotSolution& sol, double rho) {
  if (!(rho >= 0.0)) throw std::invalid_argument("radius must be non-negative");
  if (rho == 0.0) return 0.0;
  const double t = std::min(std::log(rho), sol.log_R);
  if (t <= sol.eta.t_begin()) {
    // below the series start the density is 4 (1 + h(mu)) to leading order
    return 4.0 * (1.0 + sol.perturbation.h_at(sol.mu)) * kPi * rho * rho;
  }
  return sol.eta.aux_at(0, t);
}

double physical_profile(const ShotSolution& sol, double r_phys) {
  if (!(r_phys >= 0.0) || r_phys > 1.0) throw std::invalid_argument("physical radius must lie in [0, 1]");
  if (r_phys == 0.0) return sol.mu;
  const double t = std::log(r_phys) + sol.log_R;
  const double eta = t < sol.eta.t_begin() ? sol.eta.value_at_r(std::exp(t))
                                           : sol.eta.value_at(std::min(t, sol.eta.t_end()));
  return sol.mu + eta / sol.mu;
}

std::vector<double> default_residual_radii(const ShotSolution& sol, int count) {
  if (count < 2) throw std::invalid_argument("need at least two sample radii");
  const double lo = sol.eta.t_begin() + 0.01;
  const double hi = sol.log_R - 0.01;
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    const double t = lo + (hi - lo) * i / (count - 1);
    out.push_back(std::exp(t - sol.log_R));
  }
  return out;
}

ResidualReport pde_residual_report(const ShotSolution& sol, const std::vector<double>& radii) {
  const double mu = sol.mu;
  const auto& e = sol.eta;
  ResidualReport rep;
  for (double r : radii) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("sample radii must lie in (0, 1)");
    const double t = std::log(r) + sol.log_R;
    if (t < e.t_begin() || t > e.t_end())
      throw std::invalid_argument("sample radius outside the resolved range");
    // Lu = (dv/dt) / (mu r^2) with v = r eta', physical r = e^{t - log R}.
    const double dv = e.slope_at(1, t);
    const double v = e.rderiv_at(t);
    const double log_r2 = 2.0 * std::log(r);
    // Interpolation noise of the slope is about tol |v| / h; skip samples
    // where it would exceed a hundredth of the residual tolerance.
    const double h = e.segment_for(t).h;
    const double noise = 10.0 * sol.tol * (std::abs(v) + std::abs(e.value_at(t))) / h;
    const double log_a = std::log(std::max(std::abs(dv), 1e-300)) - std::log(mu) - log_r2;
    const double noise_rel = noise / std::max(std::abs(dv), noise) / (1.0 + std::exp(-log_a));
    if (noise_rel > 1e-2 * kResidualTolerance) {
      ++rep.samples_unresolved;
      continue;
    }
    const double u = mu + e.value_at(t) / mu;
    const double nl = (1.0 + sol.perturbation.h_at(u)) * u;
    double res;
    if (dv == 0.0) {
      res = nl == 0.0 ? 0.0 : std::exp(sol.log_lambda + u * u + std::log(std::abs(nl)));
    } else {
      // |sigma A + B| / (1 + A) = |sigma + B/A| / (1 + 1/A), A = |Lu|
      const double sigma = dv > 0.0 ? 1.0 : -1.0;
      double ratio = 0.0;
      if (nl != 0.0) {
        const double log_b = sol.log_lambda + u * u + std::log(std::abs(nl));
        ratio = (nl > 0.0 ? 1.0 : -1.0) * std::exp(log_b - log_a);
      }
      res = std::abs(sigma + ratio) / (1.0 + std::exp(-log_a));
    }
    ++rep.samples_used;
    if (res > rep.max_residual) {
      rep.max_residual = res;
      rep.worst_radius = r;
    }
  }
  return rep;
}

double pde_residual(const ShotSolution& sol, const std::vector<double>& radii) {
  const auto rep = pde_residual_report(sol, radii);
  if (rep.samples_used == 0) throw NumericalError("no sample radius resolves the Laplacian");
  return rep.max_residual;
}

double pde_residual(const ShotSolution& sol) { return pde_residual(sol, default_residual_radii(sol)); }

ComparisonReport compare_with_eta0(const std::function<double(double)>& eta_of_t, double mu,
                                   double log_R, int samples) {
  const double lo = 2.0 * std::log(mu);
  if (!(log_R > lo)) throw std::invalid_argument("comparison range [mu^2, R] is empty");
  ComparisonReport rep;
  rep.max_excess = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double t = lo + (log_R - lo) * i / (samples - 1);
    const double excess = eta_of_t(t) - eta0_log(t);
    rep.max_excess = std::max(rep.max_excess, excess);
    ++rep.samples;
    if (excess > 0.0 && rep.holds) {
      rep.holds = false;
      rep.first_violation_r = std::exp(t);
    }
  }
  return rep;
}

ComparisonReport comparison_eta0(const ShotSolution& sol) {
  const auto& e = sol.eta;
  return compare_with_eta0([&](double t) { return e.value_at(std::min(t, e.t_end())); }, sol.mu,
                           sol.log_R);
}

}  // namespace mtlab
