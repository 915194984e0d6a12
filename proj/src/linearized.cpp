#include "mtlab/linearized.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mtlab/errors.hpp"
#include "mtlab/profiles.hpp"

namespace mtlab {

SourceId SourceId::w0() { return {SourceKind::W0, 0.0, {}, "w0"}; }
SourceId SourceId::z0() { return {SourceKind::Z0, 0.0, {}, "z0"}; }
SourceId SourceId::zeta0() { return {SourceKind::Zeta0, 0.0, {}, "zeta0"}; }
SourceId SourceId::za_minus_z0(double a) {
  return {SourceKind::ZaMinusZ0, a, {}, "za-z0"};
}
SourceId SourceId::custom_rule(std::function<double(double)> f, std::string label) {
  return {SourceKind::Custom, 0.0, std::move(f), std::move(label)};
}
SourceId SourceId::wa(double a) {
  return custom_rule(
      [a](double r) {
        const double e = eta0(r);
        return e + e * e - a;
      },
      "wa");
}

double source_value(const SourceId& src, double r) {
  switch (src.kind) {
    case SourceKind::W0: {
      const double e = eta0(r);
      return e + e * e;
    }
    case SourceKind::Z0: {
      const double e = eta0(r);
      const double w = w0(r);
      return w + 2.0 * w * w + 4.0 * e * w + 2.0 * w * e * e + e * e * e + 0.5 * e * e * e * e;
    }
    case SourceKind::Zeta0:
      return 1.0;
    case SourceKind::ZaMinusZ0: {
      const double a = src.a;
      const double e = eta0(r);
      const double w = w0(r);
      const double z = zeta0(r);
      return 2.0 * a * a * (z + z * z) +
             a * (e - e * e - 2.0 * w + z * (-2.0 * e * e - 4.0 * e - 4.0 * w - 1.0));
    }
    case SourceKind::Custom:
      if (!src.custom) throw std::invalid_argument("custom source without a rule");
      return src.custom(r);
  }
  throw std::invalid_argument("unknown source kind");
}

RadialSolution solve_linearized(const SourceId& src, double r_max, double tol) {
  if (!(r_max > 0.0) || r_max > 1e8) throw std::invalid_argument("r_max must lie in (0, 1e8]");
  IvpSpec spec;
  spec.rhs = [&src](double r, double w) {
    const double q = 1.0 + r * r;
    return 4.0 / (q * q) * (source_value(src, r) + 2.0 * w);
  };
  // e^{2t} * 4 e^{2 eta0} = 4 e^{2t} / (1 + e^{2t})^2 = sech^2 t.
  spec.weighted_rhs = [&src](double t, double w) {
    const double s = 1.0 / std::cosh(t);
    return s * s * (source_value(src, std::exp(t)) + 2.0 * w);
  };
  spec.u0 = 0.0;
  spec.t_end = std::log(r_max);
  spec.rel_tol = tol;
  spec.abs_tol = tol;
  auto sol = integrate(spec);
  // Solutions of this family grow at most logarithmically.
  for (std::size_t i = 0; i < sol.size(); ++i) {
    const double t = sol.grid.t_nodes[i];
    if (std::abs(sol.values[i]) > 1e3 * std::max(1.0, std::abs(t)))
      throw NumericalError("linearized solution grows faster than logarithmically");
  }
  return sol;
}

LogSlope extract_log_slope(const RadialSolution& sol, double r_lo, double r_hi, double tol) {
  if (!(r_lo > 0.0) || r_hi < 100.0 * r_lo)
    throw std::invalid_argument("extract_log_slope needs r_hi >= 100 r_lo > 0");
  const double t_lo = std::log(r_lo);
  const double t_hi = std::log(r_hi);
  if (t_hi > sol.t_end() + 1e-12 || t_lo < sol.t_begin())
    throw std::invalid_argument("slope window outside the solution range");
  constexpr int kSamples = 65;
  std::vector<double> tail;
  for (int i = kSamples / 2; i < kSamples; ++i) {
    const double t = t_lo + (t_hi - t_lo) * i / (kSamples - 1);
    tail.push_back(sol.rderiv_at(std::min(t, sol.t_end())));
  }
  std::vector<double> sorted = tail;
  std::sort(sorted.begin(), sorted.end());
  LogSlope out;
  out.beta_hat = sorted[sorted.size() / 2];
  for (double v : tail) out.error_estimate = std::max(out.error_estimate, std::abs(v - out.beta_hat));
  out.converged = out.error_estimate <= tol;
  return out;
}

const RadialSolution& z0_solution() {
  static const RadialSolution sol = solve_linearized(SourceId::z0(), 1e8, 1e-12);
  return sol;
}

}  // namespace mtlab
