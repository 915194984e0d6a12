#include "mtlab/radial_ode.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "mtlab/errors.hpp"

namespace mtlab {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Continuous extension (Hairer-Wanner).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

using State = std::vector<double>;

void validate(const IvpSpec& spec) {
  if (!spec.rhs) throw std::invalid_argument("IvpSpec.rhs is required");
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0))
    throw std::invalid_argument("tolerances must be positive");
  if (!(spec.r_start > 0.0) || spec.r_start > 1e-4)
    throw std::invalid_argument("r_start must lie in (0, 1e-4]");
  if (!(spec.max_step > 0.0)) throw std::invalid_argument("max_step must be positive");
  if (!(spec.t_end > std::log(spec.r_start)))
    throw std::invalid_argument("t_end must exceed log(r_start)");
}

class Stepper {
 public:
  explicit Stepper(const IvpSpec& spec)
      : spec_(spec), dim_(2 + spec.aux.size()) {}

  std::size_t dim() const { return dim_; }

  // Derivative in t. Returns false on a non-finite value.
  bool deriv(double t, const State& y, State& dy) const {
    const double w = spec_.weighted_rhs ? spec_.weighted_rhs(t, y[0])
                                        : std::exp(2.0 * t) * spec_.rhs(std::exp(t), y[0]);
    dy[0] = y[1];
    dy[1] = -w;
    for (std::size_t k = 0; k < spec_.aux.size(); ++k) dy[2 + k] = spec_.aux[k](t, y[0], y[1]);
    for (double d : dy)
      if (!std::isfinite(d)) return false;
    return true;
  }

  const IvpSpec& spec() const { return spec_; }

 private:
  const IvpSpec& spec_;
  std::size_t dim_;
};

struct Driver {
  const IvpSpec& spec;
  Stepper stepper;
  RadialSolution sol;
  double t = 0.0;
  State y;

  explicit Driver(const IvpSpec& s) : spec(s), stepper(s) {
    validate(spec);
    const auto [u_s, v_s] = series_start(spec);
    t = std::log(spec.r_start);
    y.assign(stepper.dim(), 0.0);
    y[0] = u_s;
    y[1] = v_s;
    // Aux integrands behave like e^{2t} near the origin, so the disk
    // contribution below r_start is half the integrand value.
    for (std::size_t k = 0; k < spec.aux.size(); ++k) y[2 + k] = 0.5 * spec.aux[k](t, u_s, v_s);
    sol.dimension = stepper.dim();
    sol.grid.r_start = spec.r_start;
    sol.u_origin = spec.u0;
    sol.laplacian_origin = -spec.rhs(0.0, spec.u0);
    sol.aux.assign(spec.aux.size(), {});
    push_node(t, y);
  }

  void push_node(double tn, const State& yn) {
    sol.grid.t_nodes.push_back(tn);
    sol.values.push_back(yn[0]);
    sol.r_derivs.push_back(yn[1]);
    for (std::size_t k = 0; k < spec.aux.size(); ++k) sol.aux[k].push_back(yn[2 + k]);
  }

  // Runs until t_end, or until on_step returns true (stop requested). The
  // callback sees the segment just appended.
  template <class OnStep>
  void run(OnStep&& on_step) {
    const std::size_t n = stepper.dim();
    State k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), y1(n), err(n);
    if (!stepper.deriv(t, y, k1)) {
      std::ostringstream msg;
      msg << "non-finite right-hand side at t=" << t;
      throw NonFiniteRhs(msg.str());
    }
    double h = std::min(spec.max_step, 1e-2);
    long steps = 0;
    const double t_end = spec.t_end;
    while (t < t_end) {
      if (++steps > spec.max_steps) throw StepSizeUnderflow("step budget exhausted", t);
      bool last = false;
      if (t + h >= t_end) {
        h = t_end - t;
        last = true;
      }
      if (h < 1e-14 * std::max(1.0, std::abs(t))) {
        std::ostringstream msg;
        msg << "step size underflow at t=" << t << " (r=" << std::exp(t) << ")";
        throw StepSizeUnderflow(msg.str(), t);
      }
      bool finite = true;
      auto stage = [&](double tc, State& out, auto&& combine) {
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * combine(i);
        finite = finite && stepper.deriv(tc, tmp, out);
      };
      stage(t + c2 * h, k2, [&](std::size_t i) { return a21 * k1[i]; });
      stage(t + c3 * h, k3, [&](std::size_t i) { return a31 * k1[i] + a32 * k2[i]; });
      stage(t + c4 * h, k4,
            [&](std::size_t i) { return a41 * k1[i] + a42 * k2[i] + a43 * k3[i]; });
      stage(t + c5 * h, k5, [&](std::size_t i) {
        return a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i];
      });
      stage(t + h, k6, [&](std::size_t i) {
        return a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i];
      });
      for (std::size_t i = 0; i < n; ++i)
        y1[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
      const double t1 = last ? t_end : t + h;
      finite = finite && stepper.deriv(t1, y1, k7);
      double err_norm = 0.0;
      if (finite) {
        for (std::size_t i = 0; i < n; ++i) {
          err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                        e7 * k7[i]);
          const double sc =
              spec.abs_tol + spec.rel_tol * std::max(std::abs(y[i]), std::abs(y1[i]));
          err_norm += (err[i] / sc) * (err[i] / sc);
        }
        err_norm = std::sqrt(err_norm / static_cast<double>(n));
      }
      if (!finite || !std::isfinite(err_norm)) {
        h *= 0.25;
        continue;
      }
      if (err_norm > 1.0) {
        h *= std::max(0.2, 0.9 * std::pow(err_norm, -0.2));
        continue;
      }
      RadialSolution::Segment seg;
      seg.t0 = t;
      seg.h = t1 - t;
      seg.coeffs.resize(5 * n);
      for (std::size_t i = 0; i < n; ++i) {
        const double ydiff = y1[i] - y[i];
        const double bspl = seg.h * k1[i] - ydiff;
        seg.coeffs[5 * i + 0] = y[i];
        seg.coeffs[5 * i + 1] = ydiff;
        seg.coeffs[5 * i + 2] = bspl;
        seg.coeffs[5 * i + 3] = ydiff - seg.h * k7[i] - bspl;
        seg.coeffs[5 * i + 4] =
            seg.h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      sol.segments.push_back(std::move(seg));
      t = t1;
      y = y1;
      k1 = k7;
      push_node(t, y);
      if (on_step()) return;
      const double fac = err_norm == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err_norm, -0.2));
      h = std::min(spec.max_step, h * std::max(0.2, fac));
    }
  }
};

double eval_segment(const RadialSolution::Segment& seg, std::size_t c, double t) {
  const double th = (t - seg.t0) / seg.h;
  const double th1 = 1.0 - th;
  const double* k = &seg.coeffs[5 * c];
  return k[0] + th * (k[1] + th1 * (k[2] + th * (k[3] + th1 * k[4])));
}

double eval_segment_slope(const RadialSolution::Segment& seg, std::size_t c, double t) {
  const double th = (t - seg.t0) / seg.h;
  const double th1 = 1.0 - th;
  const double* k = &seg.coeffs[5 * c];
  const double a = k[3] + th1 * k[4];
  const double b = k[2] + th * a;
  const double db = a - th * k[4];
  const double cc = k[1] + th1 * b;
  const double dc = -b + th1 * db;
  return (cc + th * dc) / seg.h;
}

}  // namespace

std::pair<double, double> series_start(const IvpSpec& spec) {
  if (!spec.rhs) throw std::invalid_argument("IvpSpec.rhs is required");
  const double lap0 = -spec.rhs(0.0, spec.u0);
  const double rs2 = spec.r_start * spec.r_start;
  return {spec.u0 + 0.25 * lap0 * rs2, 0.5 * lap0 * rs2};
}

RadialSolution integrate(const IvpSpec& spec) {
  Driver d(spec);
  d.run([] { return false; });
  return std::move(d.sol);
}

EventResult find_event(const IvpSpec& spec, double level) {
  Driver d(spec);
  std::optional<double> t_star;
  d.run([&] {
    const auto& seg = d.sol.segments.back();
    const double g0 = seg.coeffs[0] - level;
    const double g1 = d.y[0] - level;
    if ((g0 > 0.0 && g1 > 0.0) || (g0 < 0.0 && g1 < 0.0)) return false;
    // Bisection on the continuous extension.
    double lo = seg.t0, hi = seg.t0 + seg.h;
    const double sign_lo = g0;
    for (int it = 0; it < 200 && hi - lo > 4e-16 * std::max(1.0, std::abs(hi)); ++it) {
      const double mid = 0.5 * (lo + hi);
      const double g = eval_segment(seg, 0, mid) - level;
      if (g == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((g > 0.0) == (sign_lo > 0.0))
        lo = mid;
      else
        hi = mid;
    }
    t_star = 0.5 * (lo + hi);
    return true;
  });
  if (!t_star) {
    std::ostringstream msg;
    msg << "level " << level << " not crossed before t=" << spec.t_end;
    throw NoCrossing(msg.str());
  }
  // Replace the last node by the crossing point; the final segment keeps its
  // full step length so the extension stays exact inside [t0, t*].
  auto& sol = d.sol;
  const auto& seg = sol.segments.back();
  sol.grid.t_nodes.back() = *t_star;
  sol.values.back() = eval_segment(seg, 0, *t_star);
  sol.r_derivs.back() = eval_segment(seg, 1, *t_star);
  for (std::size_t k = 0; k < sol.aux.size(); ++k)
    sol.aux[k].back() = eval_segment(seg, 2 + k, *t_star);
  return {*t_star, std::move(sol)};
}

const RadialSolution::Segment& RadialSolution::segment_for(double t) const {
  if (segments.empty()) throw std::logic_error("empty radial solution");
  if (t < t_begin() || t > t_end()) {
    std::ostringstream msg;
    msg << "t=" << t << " outside solution range [" << t_begin() << ", " << t_end() << "]";
    throw std::out_of_range(msg.str());
  }
  auto it = std::upper_bound(segments.begin(), segments.end(), t,
                             [](double x, const Segment& s) { return x < s.t0; });
  return it == segments.begin() ? segments.front() : *std::prev(it);
}

double RadialSolution::component_at(std::size_t c, double t) const {
  return eval_segment(segment_for(t), c, t);
}

double RadialSolution::slope_at(std::size_t c, double t) const {
  if (c >= dimension) throw std::out_of_range("component index");
  return eval_segment_slope(segment_for(t), c, t);
}

double RadialSolution::clamp_log_radius(double r) const {
  // Radii that round to just beyond the last node are accepted.
  const double t = std::log(r);
  if (t > t_end() && t <= t_end() + 1e-12 * std::max(1.0, std::abs(t_end()))) return t_end();
  return std::max(t, t_begin());
}

std::vector<double> RadialSolution::state_at(double t) const {
  std::vector<double> out(dimension);
  for (std::size_t c = 0; c < dimension; ++c) out[c] = component_at(c, t);
  return out;
}

double RadialSolution::value_at_r(double r) const {
  if (!(r >= 0.0)) throw std::invalid_argument("radius must be non-negative");
  if (r < grid.r_start) return u_origin + 0.25 * laplacian_origin * r * r;
  return value_at(clamp_log_radius(r));
}

double RadialSolution::rderiv_at_r(double r) const {
  if (!(r >= 0.0)) throw std::invalid_argument("radius must be non-negative");
  if (r < grid.r_start) return 0.5 * laplacian_origin * r * r;
  return rderiv_at(clamp_log_radius(r));
}

RadialSolution RadialSolution::shifted(double delta) const {
  RadialSolution out = *this;
  out.u_origin += delta;
  for (double& v : out.values) v += delta;
  for (auto& seg : out.segments) seg.coeffs[0] += delta;
  return out;
}

}  // namespace mtlab
