#include "mtlab/maximizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mtlab/constants.hpp"

namespace mtlab {

namespace {

constexpr double kPi = std::numbers::pi;

// 5-point Gauss-Legendre on [0, 1]
constexpr std::array<double, 5> kGx = {0.046910077030668, 0.230765344947158, 0.5,
                                       0.769234655052842, 0.953089922969332};
constexpr std::array<double, 5> kGw = {0.118463442528095, 0.239314335249683, 0.284444444444444,
                                       0.239314335249683, 0.118463442528095};

double weight_g(const PerturbationSpec& s, double u) { return s.trivial ? 0.0 : s.g_at(u); }

// d/du [(1 + g(u)) e^{u^2}] e^{-u^2} = g'(u) + 2u (1 + g(u)) = 2u (1 + h(u))
double weight_dg(const PerturbationSpec& s, double u) {
  if (s.trivial) return 2.0 * u;
  const double a = std::abs(u);
  const double dg = u >= 0.0 ? s.dg(a) : -s.dg(a);
  return dg + 2.0 * u * (1.0 + s.g_at(u));
}

void require_g(const PerturbationSpec& s) {
  if (!s.trivial && (!s.g || !s.dg))
    throw std::invalid_argument("maximization needs g; family " + s.family + " defines h only");
}

}  // namespace

double RadialField::r_min() const { return std::exp(t.front()); }

double RadialField::value_at(double r) const {
  if (!(r >= 0.0) || r > 1.0) throw std::invalid_argument("radius must lie in [0, 1]");
  if (r == 0.0) return values.front();
  const double x = std::log(r);
  if (x <= t.front()) return values.front();
  auto it = std::upper_bound(t.begin(), t.end(), x);
  if (it == t.end()) return values.back();
  const std::size_t i = static_cast<std::size_t>(it - t.begin()) - 1;
  const double th = (x - t[i]) / (t[i + 1] - t[i]);
  return values[i] + th * (values[i + 1] - values[i]);
}

RadialField make_log_grid_field(double r_min, int nodes) {
  if (!(r_min > 0.0 && r_min < 1.0)) throw std::invalid_argument("r_min must lie in (0, 1)");
  if (nodes < 3) throw std::invalid_argument("need at least three nodes");
  RadialField f;
  const double t0 = std::log(r_min);
  for (int i = 0; i < nodes; ++i) f.t.push_back(t0 * (1.0 - static_cast<double>(i) / (nodes - 1)));
  f.t.back() = 0.0;
  f.values.assign(nodes, 0.0);
  return f;
}

double dirichlet_energy(const RadialField& f) {
  double e = 0.0;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    const double du = f.values[i + 1] - f.values[i];
    e += du * du / (f.t[i + 1] - f.t[i]);
  }
  return 2.0 * kPi * e;
}

double moser_functional(const RadialField& f, const PerturbationSpec& spec) {
  require_g(spec);
  const double u0 = f.values.front();
  const double rm = f.r_min();
  double total = kPi * rm * rm * (1.0 + weight_g(spec, u0)) * std::exp(u0 * u0);
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    const double h = f.t[i + 1] - f.t[i];
    double seg = 0.0;
    for (int q = 0; q < 5; ++q) {
      const double t = f.t[i] + kGx[q] * h;
      const double u = f.values[i] + kGx[q] * (f.values[i + 1] - f.values[i]);
      seg += kGw[q] * (1.0 + weight_g(spec, u)) * std::exp(2.0 * t + u * u);
    }
    total += 2.0 * kPi * h * seg;
  }
  return total;
}

std::vector<double> functional_gradient(const RadialField& f, const PerturbationSpec& spec) {
  require_g(spec);
  const std::size_t n = f.size();
  std::vector<double> b(n - 1, 0.0);
  const double u0 = f.values.front();
  const double rm = f.r_min();
  b[0] = kPi * rm * rm * weight_dg(spec, u0) * std::exp(u0 * u0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = f.t[i + 1] - f.t[i];
    double left = 0.0, right = 0.0;
    for (int q = 0; q < 5; ++q) {
      const double t = f.t[i] + kGx[q] * h;
      const double u = f.values[i] + kGx[q] * (f.values[i + 1] - f.values[i]);
      const double w = kGw[q] * weight_dg(spec, u) * std::exp(2.0 * t + u * u);
      left += w * (1.0 - kGx[q]);
      right += w * kGx[q];
    }
    b[i] += 2.0 * kPi * h * left;
    if (i + 1 < n - 1) b[i + 1] += 2.0 * kPi * h * right;
  }
  return b;
}

std::vector<double> Tridiagonal::apply(const std::vector<double>& x) const {
  const std::size_t n = diag.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = diag[i] * x[i];
    if (i > 0) y[i] += lower[i] * x[i - 1];
    if (i + 1 < n) y[i] += upper[i] * x[i + 1];
  }
  return y;
}

std::vector<double> Tridiagonal::solve(const std::vector<double>& rhs) const {
  // Thomas algorithm; the matrices here are symmetric positive definite.
  const std::size_t n = diag.size();
  std::vector<double> c(n), d(n);
  double m = diag[0];
  c[0] = n > 1 ? upper[0] / m : 0.0;
  d[0] = rhs[0] / m;
  for (std::size_t i = 1; i < n; ++i) {
    m = diag[i] - lower[i] * c[i - 1];
    c[i] = i + 1 < n ? upper[i] / m : 0.0;
    d[i] = (rhs[i] - lower[i] * d[i - 1]) / m;
  }
  std::vector<double> x(n);
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

Tridiagonal stiffness_matrix(const RadialField& f) {
  const std::size_t n = f.size() - 1;  // free nodes
  Tridiagonal k{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    const double s = 2.0 * kPi / (f.t[i + 1] - f.t[i]);
    k.diag[i] += s;
    if (i + 1 < n) {
      k.diag[i + 1] += s;
      k.upper[i] = -s;
      k.lower[i + 1] = -s;
    }
  }
  return k;
}

Tridiagonal mass_matrix(const RadialField& f) {
  const std::size_t n = f.size() - 1;
  Tridiagonal m{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  const double rm = f.r_min();
  m.diag[0] = kPi * rm * rm;
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    const double h = f.t[i + 1] - f.t[i];
    double ll = 0.0, lr = 0.0, rr = 0.0;
    for (int q = 0; q < 5; ++q) {
      const double w = kGw[q] * std::exp(2.0 * (f.t[i] + kGx[q] * h));
      ll += w * (1.0 - kGx[q]) * (1.0 - kGx[q]);
      lr += w * (1.0 - kGx[q]) * kGx[q];
      rr += w * kGx[q] * kGx[q];
    }
    m.diag[i] += 2.0 * kPi * h * ll;
    if (i + 1 < n) {
      m.diag[i + 1] += 2.0 * kPi * h * rr;
      m.upper[i] = 2.0 * kPi * h * lr;
      m.lower[i + 1] = 2.0 * kPi * h * lr;
    }
  }
  return m;
}

void project_to_energy(RadialField& f, double alpha) {
  const double e = dirichlet_energy(f);
  if (!(e > 0.0)) throw std::invalid_argument("cannot rescale a constant field");
  const double s = std::sqrt(alpha / e);
  for (double& v : f.values) v *= s;
}

namespace {

RadialField initial_field(const std::string& kind, double alpha, const MaximizerOptions& o) {
  RadialField f = make_log_grid_field(o.r_min, o.nodes);
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double t = f.t[i];
    if (kind == "moser") {
      // truncated logarithm, flat inside r = e^{-3}
      f.values[i] = std::min(-t, 3.0);
    } else if (kind == "parabolic") {
      f.values[i] = 1.0 - std::exp(2.0 * t);
    } else {
      throw std::invalid_argument("unknown start '" + kind + "'");
    }
  }
  f.values.back() = 0.0;
  project_to_energy(f, alpha);
  return f;
}

MaximizerResult ascend(RadialField f, double alpha, const PerturbationSpec& spec,
                       const MaximizerOptions& o, const std::string& start) {
  MaximizerResult res;
  res.alpha = alpha;
  res.start = start;
  const auto k = stiffness_matrix(f);
  const std::size_t n = f.size() - 1;
  double value = moser_functional(f, spec);
  res.initial_value = value;
  res.value_history.push_back(value);
  for (int it = 0; it < o.max_iterations; ++it) {
    const auto b = functional_gradient(f, spec);
    auto g = k.solve(b);
    // scale the Riesz representative to the norm of u, step towards it
    double gkg = 0.0;
    for (std::size_t i = 0; i < n; ++i) gkg += g[i] * b[i];
    const double scale = std::sqrt(alpha / gkg);
    RadialField trial = f;
    double s = 1.0;
    double new_value = value;
    bool accepted = false;
    for (int half = 0; half < 40; ++half, s *= 0.5) {
      for (std::size_t i = 0; i < n; ++i) trial.values[i] = f.values[i] + s * (scale * g[i] - f.values[i]);
      trial.values[n] = 0.0;
      project_to_energy(trial, alpha);
      new_value = moser_functional(trial, spec);
      if (new_value > value) {
        accepted = true;
        break;
      }
    }
    res.iterations = it + 1;
    if (!accepted) {
      res.converged = true;  // no ascent left at rounding level
      break;
    }
    const double gain = (new_value - value) / value;
    f = std::move(trial);
    value = new_value;
    res.value_history.push_back(value);
    if (gain < o.tol) {
      res.converged = true;
      break;
    }
  }
  res.field = std::move(f);
  res.value = value;
  return res;
}

}  // namespace

MaximizerResult maximize_subcritical(double alpha, const PerturbationSpec& spec, const MaximizerOptions& o) {
  if (!(alpha > 0.0) || !(alpha < 4.0 * kPi)) throw std::invalid_argument("alpha must lie in (0, 4 pi)");
  require_g(spec);
  std::vector<std::string> starts;
  if (o.start == "best")
    starts = {"moser", "parabolic"};
  else
    starts = {o.start};
  MaximizerResult best;
  bool have = false;
  for (const auto& s : starts) {
    auto r = ascend(initial_field(s, alpha, o), alpha, spec, o, s);
    if (!have || r.value > best.value) {
      best = std::move(r);
      have = true;
    }
  }
  const auto m = multiplier_estimate(best, spec);
  best.lambda_hat = m.lambda_hat;
  best.lambda_residual = m.residual;
  return best;
}

MoserBoundReport pointwise_moser_bound(const RadialField& f, double alpha, double eps) {
  MoserBoundReport rep;
  rep.max_excess = -1e300;
  const double e = alpha;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double u = f.values[i];
    const double excess = u * u - e / (2.0 * kPi) * (-f.t[i]);
    if (excess > rep.max_excess) {
      rep.max_excess = excess;
      rep.worst_radius = std::exp(f.t[i]);
    }
    if (excess > eps) rep.holds = false;
  }
  return rep;
}

MoserBoundReport pointwise_moser_bound(const MaximizerResult& result, double eps) {
  return pointwise_moser_bound(result.field, result.alpha, eps);
}

MultiplierEstimate multiplier_estimate(const RadialField& field, const PerturbationSpec& spec) {
  const auto k = stiffness_matrix(field);
  std::vector<double> u(field.values.begin(), field.values.end() - 1);
  const auto ku = k.apply(u);
  const auto b = functional_gradient(field, spec);
  double num = 0.0, den = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < ku.size(); ++i) {
    num += ku[i] * 0.5 * b[i];
    den += 0.25 * b[i] * b[i];
    norm += ku[i] * ku[i];
  }
  MultiplierEstimate m;
  m.lambda_hat = num / den;
  double r2 = 0.0;
  for (std::size_t i = 0; i < ku.size(); ++i) {
    const double d = ku[i] - m.lambda_hat * 0.5 * b[i];
    r2 += d * d;
  }
  m.residual = std::sqrt(r2 / norm);
  const double inf_h = spec.trivial ? 0.0 : spec.inf_h;
  m.upper = kLambda1Disk / (1.0 + inf_h);
  m.in_window = m.lambda_hat > 0.0 && m.lambda_hat < m.upper;
  m.resolved = m.residual <= 1e-6;
  return m;
}

MultiplierEstimate multiplier_estimate(const MaximizerResult& result, const PerturbationSpec& spec) {
  return multiplier_estimate(result.field, spec);
}

}  // namespace mtlab
