#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>

#include "mtlab/errors.hpp"
#include "mtlab/profiles.hpp"
#include "mtlab/radial_ode.hpp"

using namespace mtlab;

namespace {

IvpSpec liouville_spec(double r_end) {
  IvpSpec s;
  s.rhs = [](double, double u) { return 4.0 * std::exp(2.0 * u); };
  s.u0 = 0.0;
  s.t_end = std::log(r_end);
  return s;
}

IvpSpec w0_spec(double r_end) {
  IvpSpec s;
  s.rhs = [](double r, double w) {
    const double e = eta0(r);
    return 4.0 * std::exp(2.0 * e) * (e + e * e + 2.0 * w);
  };
  s.t_end = std::log(r_end);
  return s;
}

double sup_error(const RadialSolution& sol, double (*exact)(double), double r_end) {
  double err = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double r = i == 0 ? 0.0 : r_end * std::pow(10.0, -9.0 * (1.0 - i / 4000.0));
    err = std::max(err, std::abs(sol.value_at_r(r) - exact(r)));
  }
  for (double t : sol.grid.t_nodes) err = std::max(err, std::abs(sol.value_at(t) - exact(std::exp(t))));
  return err;
}

}  // namespace

TEST_CASE("series start data") {
  auto s = liouville_spec(10.0);
  auto [u, v] = series_start(s);
  const double rs = s.r_start;
  CHECK(u == doctest::Approx(-rs * rs).epsilon(1e-14));
  CHECK(v == doctest::Approx(-2 * rs * rs).epsilon(1e-14));
  auto [w, wv] = series_start(w0_spec(10.0));
  CHECK(w == 0.0);
  CHECK(wv == 0.0);
  IvpSpec z;
  z.rhs = [](double r, double u) { return 4.0 * std::exp(2.0 * eta0(r)) * (1.0 + 2.0 * u); };
  z.t_end = 1.0;
  auto [zu, zv] = series_start(z);
  CHECK(zu == doctest::Approx(-rs * rs).epsilon(1e-14));
  (void)zv;
}

TEST_CASE("Liouville equation reproduces eta0") {
  auto sol = integrate(liouville_spec(1e3));
  CHECK(sup_error(sol, eta0, 1e3) <= 1e-9);
  for (double t : {-3.0, 0.0, 2.0, 6.5})
    CHECK(sol.rderiv_at(t) == doctest::Approx(-2 * std::exp(2 * t) / (1 + std::exp(2 * t))).epsilon(1e-9));
}

TEST_CASE("w0 equation reproduces the closed form within 1e-8 quickly") {
  const auto t0 = std::chrono::steady_clock::now();
  auto sol = integrate(w0_spec(1e3));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(sup_error(sol, w0, 1e3) <= 1e-8);
  CHECK(secs < 1.0);
}

TEST_CASE("zero right side keeps a constant") {
  IvpSpec s;
  s.rhs = [](double, double) { return 0.0; };
  s.u0 = 2.5;
  s.t_end = std::log(50.0);
  auto sol = integrate(s);
  for (std::size_t i = 0; i < sol.size(); ++i) CHECK(sol.values[i] == 2.5);
  CHECK(sol.value_at_r(0.0) == 2.5);
  CHECK(sol.value_at_r(10.0) == 2.5);
}

TEST_CASE("event location") {
  auto s = liouville_spec(1e3);
  auto ev = find_event(s, -std::log(2.0));
  CHECK(std::abs(ev.t_star) <= 1e-9);
  CHECK(ev.solution.t_end() == ev.t_star);

  auto s6 = liouville_spec(std::exp(30.0));
  s6.max_step = 0.5;
  auto ev6 = find_event(s6, -36.0);
  const double expected = 0.5 * std::log(std::expm1(36.0));
  CHECK(ev6.t_star == doctest::Approx(expected).epsilon(1e-9));
  CHECK(std::abs(ev6.solution.values.back() + 36.0) <= 1e-9);
  CHECK(ev6.t_star == doctest::Approx(18.0).epsilon(1e-3));

  IvpSpec c;
  c.rhs = [](double, double) { return 0.0; };
  c.u0 = 1.0;
  c.t_end = 5.0;
  CHECK_THROWS_AS(find_event(c, 0.0), NoCrossing);
}

TEST_CASE("halving tolerances changes the solution by less than the coarse tolerance") {
  auto a = w0_spec(1e3);
  a.rel_tol = a.abs_tol = 1e-9;
  auto b = a;
  b.rel_tol = b.abs_tol = 5e-10;
  auto sa = integrate(a);
  auto sb = integrate(b);
  double d = 0.0;
  for (int i = 0; i <= 500; ++i) {
    const double r = 1e3 * std::pow(10.0, -6.0 * (1.0 - i / 500.0));
    d = std::max(d, std::abs(sa.value_at_r(r) - sb.value_at_r(r)));
  }
  CHECK(d < 1e-8 * 10);  // global error accumulates over ~log-many steps
}

TEST_CASE("divergence identity via an auxiliary integral") {
  // aux = int_{B_r} Lu dx = -2 pi int rhs r dr ; compare with 2 pi r u'(r)
  auto s = w0_spec(1e3);
  s.aux.push_back([](double t, double u, double) {
    const double r = std::exp(t);
    const double e = eta0(r);
    return -2.0 * M_PI * r * r * 4.0 * std::exp(2.0 * e) * (e + e * e + 2.0 * u);
  });
  auto sol = integrate(s);
  for (double t : {-5.0, 0.0, 1.0, 4.0, std::log(1e3)})
    CHECK(std::abs(sol.aux_at(0, t) - 2.0 * M_PI * sol.rderiv_at(t)) <= 1e-9);
}

TEST_CASE("bad specs are rejected") {
  auto s = liouville_spec(10.0);
  s.rel_tol = 0.0;
  CHECK_THROWS_AS(integrate(s), std::invalid_argument);
  s = liouville_spec(10.0);
  s.r_start = 1e-2;
  CHECK_THROWS_AS(integrate(s), std::invalid_argument);
  s = liouville_spec(10.0);
  auto sol = integrate(s);
  CHECK_THROWS_AS(sol.value_at_r(20.0), std::out_of_range);
}

TEST_CASE("non-finite right side is reported") {
  IvpSpec s;
  s.rhs = [](double, double) { return std::nan(""); };
  s.t_end = 1.0;
  CHECK_THROWS_AS(integrate(s), NumericalError);
}

TEST_CASE("shifted copies shift everything") {
  auto sol = integrate(liouville_spec(10.0));
  auto sh = sol.shifted(1.5);
  for (double t : {-10.0, -1.0, 0.3, 2.0}) CHECK(sh.value_at(t) - sol.value_at(t) == doctest::Approx(1.5));
  CHECK(sh.value_at_r(0.0) == 1.5);
}
