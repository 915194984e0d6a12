#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mtlab/constants.hpp"
#include "mtlab/maximizer.hpp"
#include "mtlab/shooting.hpp"

using namespace mtlab;

namespace {
constexpr double kPi = std::numbers::pi;

double bessel_j0_first_root() {
  double lo = 2.0, hi = 3.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::cyl_bessel_j(0.0, mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// smallest eigenvalue of K x = lambda M x by inverse iteration
double discrete_lambda1(const RadialField& f) {
  const auto k = stiffness_matrix(f);
  const auto m = mass_matrix(f);
  std::vector<double> x(k.diag.size(), 1.0);
  double lambda = 0.0;
  for (int it = 0; it < 200; ++it) {
    auto y = k.solve(m.apply(x));
    const auto ky = k.apply(y);
    const auto my = m.apply(y);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      num += y[i] * ky[i];
      den += y[i] * my[i];
    }
    lambda = num / den;
    const double s = 1.0 / std::sqrt(den);
    for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[i] * s;
  }
  return lambda;
}
}  // namespace

TEST_CASE("first Dirichlet eigenvalue of the unit disk") {
  const double j = bessel_j0_first_root();
  CHECK(j * j == doctest::Approx(kLambda1Disk).epsilon(1e-13));
  const double discrete = discrete_lambda1(make_log_grid_field(1e-8, 4096));
  CHECK(discrete == doctest::Approx(kLambda1Disk).epsilon(1e-5));
}

TEST_CASE("energy of piecewise-linear fields and projection") {
  auto f = make_log_grid_field(1e-4, 101);
  for (std::size_t i = 0; i < f.size(); ++i) f.values[i] = -f.t[i];  // log(1/r)
  CHECK(dirichlet_energy(f) == doctest::Approx(2.0 * kPi * std::log(1e4)));
  project_to_energy(f, 3.0);
  CHECK(std::abs(dirichlet_energy(f) - 3.0) <= 1e-12);
  CHECK(f.value_at(1.0) == 0.0);
  CHECK(f.value_at(0.0) == f.values.front());
}

TEST_CASE("moser functional of the zero field is the disk area") {
  auto f = make_log_grid_field(1e-8, 512);
  CHECK(moser_functional(f, no_perturbation()) == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("gradient matches finite differences") {
  auto f = make_log_grid_field(1e-3, 40);
  for (std::size_t i = 0; i < f.size(); ++i) f.values[i] = 1.0 - std::exp(2.0 * f.t[i]);
  auto spec = make_family("power-log", {{"a", 0.5}, {"p", 3.0}, {"R", 0.5}});
  const auto b = functional_gradient(f, spec);
  for (std::size_t i : {0u, 5u, 20u, 38u}) {
    auto p = f, m = f;
    p.values[i] += 1e-6;
    m.values[i] -= 1e-6;
    const double fd = (moser_functional(p, spec) - moser_functional(m, spec)) / 2e-6;
    CHECK(b[i] == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("subcritical maximizer, h = 0") {
  const auto none = no_perturbation();
  auto half = maximize_subcritical(0.5 * 4.0 * kPi, none);
  CHECK(half.converged);
  CHECK(half.value <= 2.0 * kPi + 1e-6);
  CHECK(half.value >= half.initial_value);
  CHECK(std::abs(dirichlet_energy(half.field) - half.alpha) <= 1e-10);
  for (std::size_t i = 1; i < half.value_history.size(); ++i)
    CHECK(half.value_history[i] >= half.value_history[i - 1] - 1e-12);
  CHECK(pointwise_moser_bound(half).holds);

  auto small = maximize_subcritical(1e-3 * 4.0 * kPi, none);
  CHECK(small.value == doctest::Approx(kPi).epsilon(1e-2));
  const double l1 = discrete_lambda1(small.field);
  CHECK(small.lambda_hat < l1);
  CHECK(small.lambda_hat == doctest::Approx(l1).epsilon(1e-2));
}

TEST_CASE("maximizer agrees with shooting at mu = max u") {
  for (double frac : {0.5, 0.9}) {
    auto res = maximize_subcritical(frac * 4.0 * kPi, no_perturbation());
    auto sol = shoot(res.field.values.front(), no_perturbation());
    CHECK(res.value == doctest::Approx(sol.moser_integral).epsilon(1e-4));
    CHECK(sol.energy_total == doctest::Approx(res.alpha).epsilon(1e-4));
    CHECK(res.lambda_hat == doctest::Approx(std::exp(sol.log_lambda)).epsilon(1e-4));
  }
}

TEST_CASE("multiplier window under a perturbation") {
  auto spec = make_family("power-log", {{"a", 1.0}, {"p", 3.0}, {"R", 0.5}});
  auto res = maximize_subcritical(0.8 * 4.0 * kPi, spec);
  auto m = multiplier_estimate(res, spec);
  CHECK(m.resolved);
  CHECK(m.in_window);
  CHECK(m.upper == doctest::Approx(kLambda1Disk / (1.0 + spec.inf_h)));
}

TEST_CASE("moser bound: test of the test") {
  auto f = make_log_grid_field(1e-6, 200);
  for (std::size_t i = 0; i < f.size(); ++i) f.values[i] = 2.0 * (1.0 - std::exp(f.t[i]));
  CHECK(pointwise_moser_bound(f, dirichlet_energy(f)).holds);
  // against its own energy the bound holds for any field, spikes included
  auto spiked = f;
  spiked.values[f.size() - 3] = 5.0;
  CHECK(pointwise_moser_bound(spiked, dirichlet_energy(spiked)).holds);
  // a result corrupted after projection is caught
  auto res = maximize_subcritical(0.5 * 4.0 * kPi, no_perturbation());
  CHECK(pointwise_moser_bound(res).holds);
  res.field.values[res.field.size() - 3] += 1.0;
  const auto rep = pointwise_moser_bound(res);
  CHECK_FALSE(rep.holds);
  CHECK(rep.worst_radius < 1.0);
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(maximize_subcritical(4.0 * kPi, no_perturbation()), std::invalid_argument);
  CHECK_THROWS_AS(maximize_subcritical(0.0, no_perturbation()), std::invalid_argument);
  CHECK_THROWS_AS(maximize_subcritical(1.0, make_family("inverse-square", {{"a", 1.0}})),
                  std::invalid_argument);
  MaximizerOptions o;
  o.start = "spiral";
  CHECK_THROWS_AS(maximize_subcritical(1.0, no_perturbation(), o), std::invalid_argument);
}
