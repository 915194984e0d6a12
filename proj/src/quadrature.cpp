#include "mtlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mtlab/errors.hpp"
#include "mtlab/gauss_kronrod.hpp"
#include "mtlab/profiles.hpp"

namespace mtlab {

namespace {

constexpr double kPi = std::numbers::pi;

// int_T^inf t^4 e^{-2t} dt
double tail_moment(double big_t) {
  const double t = big_t;
  return std::exp(-2.0 * t) *
         (t * t * t * t / 2.0 + t * t * t + 1.5 * t * t + 1.5 * t + 0.75);
}

}  // namespace

QuadratureResult integrate_plane(const RadialRule& f, double tol, double initial_cut) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (!(initial_cut > 1.0)) throw std::invalid_argument("cut radius must exceed 1");
  QuadratureResult out;
  // Budget: tol/2 for the tail, tol/4 for each panel family (after 2 pi).
  const double panel_tol = tol / (8.0 * kPi);
  const auto inner = gk::integrate([&](double r) { return f(r) * r; }, 0.0, 1.0, panel_tol, 0.0);
  out.nodes_used += inner.evaluations;

  // Majorant constant of |f| r^4 / log^4 r sampled over the last decade.
  auto majorant = [&](double t_cut) {
    double c = 0.0;
    for (int i = 0; i <= 32; ++i) {
      const double t = t_cut - std::log(10.0) * (1.0 - i / 32.0);
      const double r2 = std::exp(2.0 * t);
      c = std::max(c, std::abs(f(std::exp(t))) * r2 * r2 / std::pow(std::max(t, 1.0), 4));
    }
    return 2.0 * c;  // safety factor on the sampled envelope
  };
  double t_cut = std::log(initial_cut);
  double tail = 2.0 * kPi * majorant(t_cut) * tail_moment(t_cut);
  while (tail > tol / 2.0) {
    t_cut += std::log(100.0);
    if (t_cut > 80.0) {
      std::ostringstream msg;
      msg << "tail majorant " << tail << " not below tol/2 = " << tol / 2.0;
      throw QuadratureFailure(msg.str());
    }
    tail = 2.0 * kPi * majorant(t_cut) * tail_moment(t_cut);
  }
  const auto outer = gk::integrate(
      [&](double t) { return f(std::exp(t)) * std::exp(2.0 * t); }, 0.0, t_cut, panel_tol, 0.0);
  out.nodes_used += outer.evaluations;
  if (!inner.converged || !outer.converged)
    throw QuadratureFailure("adaptive panels did not reach the requested tolerance");
  out.value = 2.0 * kPi * (inner.value + outer.value);
  out.abs_error = 2.0 * kPi * (inner.abs_error + outer.abs_error) + tail;
  if (out.abs_error > tol) {
    std::ostringstream msg;
    msg << "error estimate " << out.abs_error << " above tolerance " << tol;
    throw QuadratureFailure(msg.str());
  }
  return out;
}

QuadratureResult beta_from_source(const RadialRule& f, double tol) {
  const double scale = 2.0 / kPi;
  auto res = integrate_plane([&](double r) { return psi0(r) * f(r); }, tol / scale);
  res.value *= -scale;
  res.abs_error *= scale;
  return res;
}

double ClosedForm::value() const {
  const double p2 = kPi * kPi;
  return one.value() + pi2.value() * p2 + pi4.value() * p2 * p2 + zeta3.value() * kZeta3;
}

const std::vector<TableEntry>& table_entries() {
  static const std::vector<TableEntry> entries = [] {
    const double raw = kPi / 2.0;
    std::vector<TableEntry> t;
    auto e = [](double r) { return eta0(r); };
    t.push_back({"psi0*eta0^3", {{-21, 2}, {0, 1}, {0, 1}, {0, 1}}, raw,
                 [=](double r) { return std::pow(e(r), 3); }});
    t.push_back({"psi0*eta0^4", {{45, 1}, {0, 1}, {0, 1}, {0, 1}}, raw,
                 [=](double r) { return std::pow(e(r), 4); }});
    t.push_back({"psi0*w0", {{-7, 6}, {1, 9}, {0, 1}, {0, 1}}, raw,
                 [](double r) { return w0(r); }});
    t.push_back({"psi0*w0*eta0", {{125, 36}, {-4, 27}, {0, 1}, {-4, 3}}, raw,
                 [=](double r) { return w0(r) * e(r); }});
    t.push_back({"psi0*w0*eta0^2", {{-409, 27}, {35, 81}, {2, 45}, {32, 9}}, raw,
                 [=](double r) { return w0(r) * e(r) * e(r); }});
    t.push_back({"psi0*w0^2", {{625, 108}, {-2, 81}, {-2, 45}, {-8, 9}}, raw,
                 [](double r) { return w0(r) * w0(r); }});
    t.push_back({"norm:zeta0^2*psi0", {{1, 3}, {0, 1}, {0, 1}, {0, 1}}, 1.0,
                 [](double r) { return zeta0(r) * zeta0(r); }});
    t.push_back({"norm:-2w0*psi0", {{7, 3}, {-2, 9}, {0, 1}, {0, 1}}, 1.0,
                 [](double r) { return -2.0 * w0(r); }});
    t.push_back({"norm:eta0*psi0", {{-1, 1}, {0, 1}, {0, 1}, {0, 1}}, 1.0,
                 [=](double r) { return e(r); }});
    t.push_back({"norm:-eta0^2*psi0", {{-3, 1}, {0, 1}, {0, 1}, {0, 1}}, 1.0,
                 [=](double r) { return -e(r) * e(r); }});
    t.push_back({"norm:-zeta0*psi0", {{1, 3}, {0, 1}, {0, 1}, {0, 1}}, 1.0,
                 [](double r) { return -zeta0(r); }});
    t.push_back({"norm:-4w0*zeta0*psi0", {{-67, 27}, {2, 9}, {0, 1}, {0, 1}}, 1.0,
                 [](double r) { return -4.0 * w0(r) * zeta0(r); }});
    t.push_back({"norm:-4eta0*zeta0*psi0", {{-34, 9}, {0, 1}, {0, 1}, {0, 1}}, 1.0,
                 [=](double r) { return -4.0 * e(r) * zeta0(r); }});
    t.push_back({"norm:-2eta0^2*zeta0*psi0", {{151, 27}, {0, 1}, {0, 1}, {0, 1}}, 1.0,
                 [=](double r) { return -2.0 * e(r) * e(r) * zeta0(r); }});
    return t;
  }();
  return entries;
}

std::vector<TableRow> integral_tables(double tol) {
  std::vector<TableRow> rows;
  for (const auto& entry : table_entries()) {
    // raw entries are int psi0 f dx; normalized ones carry the 2/pi factor.
    const double factor = entry.scale == 1.0 ? 2.0 / kPi : 1.0;
    auto res = integrate_plane([&](double r) { return psi0(r) * entry.integrand(r); },
                               tol / factor);
    res.value *= factor;
    res.abs_error *= factor;
    rows.push_back({entry.name, entry.closed_form_value(), res});
  }
  return rows;
}

BetaCombination z0_beta_combination(const std::vector<TableRow>& rows) {
  const auto& t = table_entries();
  if (rows.size() < 6) throw std::invalid_argument("need the six raw table rows");
  BetaCombination b;
  long double one = 0, pi2 = 0, pi4 = 0, z3 = 0;
  for (int i = 0; i < 6; ++i) {
    const double w = kZ0SourceWeights[i];
    one += w * t[i].normalized.one.value();
    pi2 += w * t[i].normalized.pi2.value();
    pi4 += w * t[i].normalized.pi4.value();
    z3 += w * t[i].normalized.zeta3.value();
    b.numeric -= w * rows[i].numeric.value / t[i].scale;
    b.abs_error += w * rows[i].numeric.abs_error / t[i].scale;
  }
  b.one = -static_cast<double>(one);
  b.pi2 = -static_cast<double>(pi2);
  b.pi4 = -static_cast<double>(pi4);
  b.zeta3 = -static_cast<double>(z3);
  const double p2 = std::numbers::pi * std::numbers::pi;
  b.exact = b.one + b.pi2 * p2 + b.pi4 * p2 * p2 + b.zeta3 * kZeta3;
  return b;
}

TableSum perturbation_table_sum(const std::vector<TableRow>& rows) {
  const auto& t = table_entries();
  if (rows.size() != t.size()) throw std::invalid_argument("need all table rows");
  TableSum s;
  for (std::size_t i = 7; i < t.size(); ++i) {
    s.exact += t[i].closed_form_value();
    s.numeric += rows[i].numeric.value;
    s.abs_error += rows[i].numeric.abs_error;
  }
  return s;
}

}  // namespace mtlab
