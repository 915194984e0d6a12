#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mtlab/errors.hpp"
#include "mtlab/gauss_kronrod.hpp"
#include "mtlab/shooting.hpp"

using namespace mtlab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("boundary event and multiplier") {
  auto sol = shoot(6.0, no_perturbation());
  CHECK(sol.eta.value_at(sol.log_R) == doctest::Approx(-36.0).epsilon(1e-10));
  CHECK(sol.log_lambda == doctest::Approx(std::log(4.0) + 2.0 * sol.log_R - 36.0 - 2.0 * std::log(6.0)));
  CHECK(physical_profile(sol, 0.0) == 6.0);
  CHECK(std::abs(physical_profile(sol, 1.0)) <= 1e-8);
  CHECK(sol.energy_inner + sol.energy_outer == doctest::Approx(sol.energy_total));
  CHECK(sol.energy_inner > 0.0);
  CHECK(sol.energy_outer > 0.0);
}

TEST_CASE("energy equals the Dirichlet integral") {
  // int |grad u|^2 = (2 pi / mu^2) int (r eta')^2 dt
  for (double mu : {1.0, 4.0, 8.0}) {
    auto sol = shoot(mu, no_perturbation());
    auto v2 = [&](double t) {
      const double v = sol.eta.rderiv_at(t);
      return v * v;
    };
    auto res = gk::integrate(v2, sol.eta.t_begin(), sol.log_R, 1e-14, 1e-12);
    const double dirichlet = 2.0 * kPi / (mu * mu) * res.value;
    CHECK(dirichlet == doctest::Approx(sol.energy_total).epsilon(1e-6));
  }
}

TEST_CASE("small mu has small energy, large mu approaches 4 pi") {
  CHECK(shoot(0.1, no_perturbation()).energy_total < 0.5);
  auto s = shoot(12.0, no_perturbation());
  CHECK(s.energy_total > 4.0 * kPi);
  CHECK(s.energy_total - 4.0 * kPi < 0.01);
}

TEST_CASE("PDE residual is small and detects a wrong multiplier") {
  auto sol = shoot(6.0, no_perturbation());
  CHECK(pde_residual(sol) <= 1e-7);
  auto bad = sol;
  bad.log_lambda += 1e-3;
  CHECK(pde_residual(bad) > 1e-5);
}

TEST_CASE("comparison with eta0") {
  for (double mu : {6.0, 10.0}) {
    CHECK(comparison_eta0(shoot(mu, no_perturbation())).holds);
    CHECK(comparison_eta0(shoot(mu, make_family("inverse-square", {{"a", 1.0}}))).holds);
  }
  auto sol = shoot(6.0, no_perturbation());
  auto shifted = compare_with_eta0([](double t) { return eta0_log(t) + 1.0; }, 6.0, sol.log_R);
  CHECK_FALSE(shifted.holds);
  CHECK(shifted.max_excess == doctest::Approx(1.0));
}

TEST_CASE("eta0_log is stable") {
  CHECK(eta0_log(0.0) == doctest::Approx(-std::log(2.0)));
  CHECK(eta0_log(400.0) == doctest::Approx(-800.0));
  CHECK(std::isfinite(eta0_log(-400.0)));
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(shoot(0.01, no_perturbation()), std::invalid_argument);
  CHECK_THROWS_AS(shoot(30.0, no_perturbation()), std::invalid_argument);
  ShotOptions o;
  o.tol = 0.0;
  CHECK_THROWS_AS(shoot(2.0, no_perturbation(), o), std::invalid_argument);
  auto sol = shoot(2.0, no_perturbation());
  CHECK_THROWS_AS(physical_profile(sol, 1.5), std::invalid_argument);
}
