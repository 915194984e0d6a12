#include "mtlab/perturbations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "mtlab/constants.hpp"
#include "mtlab/gauss_kronrod.hpp"

namespace mtlab {

namespace {

double bump(double y) { return y > 0.0 ? std::exp(-1.0 / y) : 0.0; }

double param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

void reject_unknown(const std::map<std::string, double>& p, std::set<std::string> allowed,
                    const std::string& family) {
  for (const auto& [k, v] : p) {
    if (!allowed.count(k)) throw std::invalid_argument("unknown parameter '" + k + "' for family " + family);
    if (!std::isfinite(v)) throw std::invalid_argument("parameter '" + k + "' must be finite");
  }
}

}  // namespace

CutoffValue smooth_cutoff(double x) {
  if (x <= 1.0) return {0.0, 0.0};
  if (x >= 2.0) return {1.0, 0.0};
  const double a = bump(x - 1.0);
  const double b = bump(2.0 - x);
  const double da = a / ((x - 1.0) * (x - 1.0));
  const double db = -b / ((2.0 - x) * (2.0 - x));
  const double den = a + b;
  return {a / den, (da * b - a * db) / (den * den)};
}

double PerturbationSpec::h_at(double t) const {
  if (trivial) return 0.0;
  return h(std::abs(t));
}

double PerturbationSpec::g_at(double t) const {
  if (trivial) return 0.0;
  if (!g) throw std::logic_error("family " + family + " defines h only");
  return g(std::abs(t));
}

RealRule h_from_g(RealRule g, RealRule dg) {
  return [g = std::move(g), dg = std::move(dg)](double t) {
    if (t == 0.0) throw std::invalid_argument("h = g + g'/(2t) is undefined at t = 0");
    return g(t) + dg(t) / (2.0 * t);
  };
}

PerturbationSpec no_perturbation() {
  PerturbationSpec s;
  s.g = [](double) { return 0.0; };
  s.dg = [](double) { return 0.0; };
  s.h = [](double) { return 0.0; };
  return s;
}

void compute_bounds(PerturbationSpec& spec) {
  double hi = 0.0, lo = 0.0, glo = 0.0;  // tail limit of both h and g is 0
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const double t = std::pow(10.0, -3.0 + 11.0 * i / (n - 1));
    const double h = spec.h(t);
    if (!std::isfinite(h)) throw std::invalid_argument("h is not finite at t=" + std::to_string(t));
    hi = std::max(hi, h);
    lo = std::min(lo, h);
    if (spec.g) glo = std::min(glo, spec.g(t));
  }
  spec.sup_h = hi;
  spec.inf_h = lo;
  spec.inf_g = glo;
}

PerturbationSpec make_family(const std::string& name, const std::map<std::string, double>& params) {
  PerturbationSpec s;
  s.family = name;
  s.params = params;
  if (name == "none") {
    reject_unknown(params, {}, name);
    auto z = no_perturbation();
    z.params = params;
    return z;
  }
  s.trivial = false;
  if (name == "power-log") {
    reject_unknown(params, {"a", "p", "q", "R"}, name);
    const double a = param(params, "a", 1.0), p = param(params, "p", 3.0),
                 q = param(params, "q", 0.0), R = param(params, "R", 2.0);
    if (!(R > 0.0)) throw std::invalid_argument("cutoff radius R must be positive");
    if (q != 0.0 && R < 1.0) throw std::invalid_argument("R >= 1 is required when q != 0");
    if (!(p > 0.0)) throw std::invalid_argument("decay exponent p must be positive");
    s.params = {{"a", a}, {"p", p}, {"q", q}, {"R", R}};
    // core(t) = log^q t t^{-p}, core'(t) = (q log^{q-1} t - p log^q t) t^{-p-1}
    auto core = [p, q](double t) {
      return q == 0.0 ? std::pow(t, -p) : std::pow(std::log(t), q) * std::pow(t, -p);
    };
    auto dcore = [p, q](double t) {
      if (q == 0.0) return -p * std::pow(t, -p - 1.0);
      const double l = std::log(t);
      return (q * std::pow(l, q - 1.0) - p * std::pow(l, q)) * std::pow(t, -p - 1.0);
    };
    s.g = [=](double t) {
      const auto c = smooth_cutoff(t / R);
      return c.value == 0.0 ? 0.0 : a * c.value * core(t);
    };
    s.dg = [=](double t) {
      const auto c = smooth_cutoff(t / R);
      if (c.value == 0.0) return 0.0;
      return a * (c.derivative / R * core(t) + c.value * dcore(t));
    };
    s.h = [=](double t) {
      const auto c = smooth_cutoff(t / R);
      if (c.value == 0.0) return 0.0;
      return a * (c.value * (core(t) + dcore(t) / (2.0 * t)) + c.derivative / R * core(t) / (2.0 * t));
    };
  } else if (name == "oscillating") {
    reject_unknown(params, {"a", "p", "R"}, name);
    const double a = param(params, "a", 1.0), p = param(params, "p", 3.0), R = param(params, "R", 2.0);
    if (!(R > 0.0)) throw std::invalid_argument("cutoff radius R must be positive");
    if (!(p > 0.0)) throw std::invalid_argument("decay exponent p must be positive");
    s.params = {{"a", a}, {"p", p}, {"R", R}};
    auto core = [p](double t) { return std::cos(std::log(t)) * std::pow(t, -p); };
    auto dcore = [p](double t) {
      const double l = std::log(t);
      return (-std::sin(l) - p * std::cos(l)) * std::pow(t, -p - 1.0);
    };
    s.g = [=](double t) {
      const auto c = smooth_cutoff(t / R);
      return c.value == 0.0 ? 0.0 : a * c.value * core(t);
    };
    s.dg = [=](double t) {
      const auto c = smooth_cutoff(t / R);
      if (c.value == 0.0) return 0.0;
      return a * (c.derivative / R * core(t) + c.value * dcore(t));
    };
    s.h = [=](double t) {
      const auto c = smooth_cutoff(t / R);
      if (c.value == 0.0) return 0.0;
      return a * (c.value * (core(t) + dcore(t) / (2.0 * t)) + c.derivative / R * core(t) / (2.0 * t));
    };
  } else if (name == "inverse-square") {
    reject_unknown(params, {"a", "R"}, name);
    const double a = param(params, "a", 1.0), R = param(params, "R", 2.5);
    if (!(R > 0.0)) throw std::invalid_argument("cutoff radius R must be positive");
    s.params = {{"a", a}, {"R", R}};
    s.h_only = true;
    s.h = [=](double t) {
      const double c = smooth_cutoff(t / R).value;
      return c == 0.0 ? 0.0 : -a * c / (t * t);
    };
  } else {
    throw std::invalid_argument("unknown perturbation family '" + name + "'");
  }
  compute_bounds(s);
  if (!(s.inf_h > -1.0)) {
    std::ostringstream msg;
    msg << "family " << name << " has inf h = " << s.inf_h << " <= -1";
    throw std::invalid_argument(msg.str());
  }
  if (s.g && !(s.inf_g > -1.0)) {
    std::ostringstream msg;
    msg << "family " << name << " has inf g = " << s.inf_g << " <= -1";
    throw std::invalid_argument(msg.str());
  }
  if (s.params.count("a") && s.params.at("a") == 0.0) s.trivial = true;
  return s;
}

double reconstruct_g(const PerturbationSpec& spec, double t) {
  t = std::abs(t);
  if (t == 0.0 || spec.trivial) return 0.0;
  // e^{s^2 - t^2} concentrates near s = t; integrate on panels of width ~1/t.
  auto f = [&](double s) { return 2.0 * s * spec.h(s) * std::exp((s - t) * (s + t)); };
  const double lo = std::max(0.0, t - 40.0 / std::max(t, 1.0));
  return gk::integrate(f, lo, t, 1e-15, 1e-13).value;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Satisfied: return "satisfied";
    case Verdict::Violated: return "violated";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<double> log_grid(double t_lo, double t_hi, int count) {
  if (!(t_lo > 0.0) || !(t_hi > t_lo) || count < 2) throw std::invalid_argument("bad log grid");
  std::vector<double> out(count);
  const double a = std::log(t_lo), b = std::log(t_hi);
  for (int i = 0; i < count; ++i) out[i] = std::exp(a + (b - a) * i / (count - 1));
  out.front() = t_lo;
  out.back() = t_hi;
  return out;
}

namespace {

double shift_sup(const PerturbationSpec& spec, double t, int points) {
  const double eps = (8.0 * std::log(t) + 1.0) / t;
  const double h0 = spec.h_at(t);
  double m = 0.0;
  for (int i = 0; i < points; ++i) {
    const double s = -1.0 + 2.0 * i / (points - 1);
    m = std::max(m, std::abs(spec.h_at(t + s * eps) - h0));
  }
  return m;
}

ConditionReport judge(std::string name, std::string description, const std::vector<double>& t,
                      std::vector<double> q) {
  ConditionReport rep{std::move(name), std::move(description), t, std::move(q)};
  const std::size_t n = rep.quantity.size();
  std::vector<double> env(n);
  double run = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    run = std::max(run, std::abs(rep.quantity[i]));
    env[i] = run;
  }
  const double mid = env[n / 2];
  if (mid == 0.0) {
    rep.tail_ratio = 0.0;
    rep.verdict = Verdict::Satisfied;
    return rep;
  }
  rep.tail_ratio = env[n - 1] / mid;
  rep.verdict = rep.tail_ratio <= kSatisfiedRatio ? Verdict::Satisfied
                : rep.tail_ratio >= kViolatedRatio ? Verdict::Violated
                                                   : Verdict::Inconclusive;
  return rep;
}

}  // namespace

std::vector<ConditionReport> check_conditions(const PerturbationSpec& spec,
                                              const std::vector<double>& t_samples) {
  if (t_samples.size() < 3) throw std::invalid_argument("need at least three samples");
  std::vector<double> decay, shift;
  for (double t : t_samples) {
    if (!(t > 1.0)) throw std::invalid_argument("condition samples must exceed 1");
    decay.push_back(t * t * spec.h_at(t));
    shift.push_back(t * t * t * t * shift_sup(spec, t, 21));
  }
  std::vector<ConditionReport> out;
  out.push_back(judge("h_decay", "t^2 h(t) -> 0", t_samples, std::move(decay)));
  out.push_back(judge("h_shift", "t^4 sup_s |h(t + s(8 log t + 1)/t) - h(t)| -> 0", t_samples,
                      std::move(shift)));
  return out;
}

std::vector<ConditionReport> check_conditions(const PerturbationSpec& spec) {
  return check_conditions(spec, log_grid(10.0, 1e6, 41));
}

double delta_k(double mu, const PerturbationSpec& spec) {
  if (!(mu > 1.0)) throw std::invalid_argument("delta_k needs mu > 1");
  const double m6 = std::pow(mu, -6.0);
  return std::max({shift_sup(spec, mu, 201), m6, spec.h_at(mu) / (mu * mu)});
}

}  // namespace mtlab
