#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mtlab/gauss_kronrod.hpp"
#include "mtlab/linearized.hpp"
#include "mtlab/profiles.hpp"
#include "mtlab/quadrature.hpp"

using namespace mtlab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("Kronrod rule integrates polynomials to degree 31 exactly") {
  for (int deg = 0; deg <= 31; ++deg) {
    auto p = gk::panel([deg](double x) { return std::pow(x, deg); }, -1.0, 2.0);
    const double exact = (std::pow(2.0, deg + 1) - std::pow(-1.0, deg + 1)) / (deg + 1);
    CHECK(p.value == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("adaptive integration of a peaked function") {
  auto res = gk::integrate([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0, 1e-10, 0.0);
  CHECK(res.converged);
  CHECK(res.value == doctest::Approx(2.0 / 1e-2 * std::atan(1.0 / 1e-2)).epsilon(1e-12));
}

TEST_CASE("planar integrals of the bubble") {
  auto r = integrate_plane([](double r) { return 4.0 * std::exp(2.0 * eta0(r)); }, 1e-10);
  CHECK(std::abs(r.value - 4.0 * kPi) <= 1e-10);
  CHECK(r.abs_error <= 1e-10);
  CHECK(r.nodes_used > 0);
  auto e3 = integrate_plane([](double r) { return psi0(r) * std::pow(eta0(r), 3); }, 1e-10);
  CHECK(std::abs(e3.value + 21.0 * kPi / 4.0) <= 1e-9);
  auto e4 = integrate_plane([](double r) { return psi0(r) * std::pow(eta0(r), 4); }, 1e-10);
  CHECK(std::abs(e4.value - 45.0 * kPi / 2.0) <= 1e-9);
}

TEST_CASE("doubling the cut radius stays within the error estimate") {
  auto f = [](double r) { return psi0(r) * w0(r) * eta0(r); };
  auto a = integrate_plane(f, 1e-10, 1e4);
  auto b = integrate_plane(f, 1e-10, 2e4);
  CHECK(std::abs(a.value - b.value) <= a.abs_error + b.abs_error);
}

TEST_CASE("slopes by weighted integral") {
  auto z = beta_from_source([](double r) { return source_value(SourceId::z0(), r); }, 1e-10);
  CHECK(std::abs(z.value - (-6.0 - kPi * kPi / 3.0)) <= 1e-6);
  auto b2 = beta_from_source([](double r) {
    const double z = zeta0(r);
    return 2.0 * (z + z * z);
  }, 1e-12);
  CHECK(std::abs(b2.value) <= 1e-10);
  auto zero = beta_from_source([](double) { return 0.0; }, 1e-12);
  CHECK(zero.value == 0.0);
}

TEST_CASE("all tabulated integrals") {
  auto rows = integral_tables(1e-11);
  REQUIRE(rows.size() == 14);
  for (const auto& row : rows) {
    INFO(row.name);
    CHECK(std::abs(row.numeric.value - row.closed_form) <= 1e-8 * std::max(1.0, std::abs(row.closed_form)));
  }
}

TEST_CASE("closed-form combinations in rational arithmetic") {
  // z0 source weights: w0 + 2 w0^2 + 4 eta0 w0 + 2 eta0^2 w0 + eta0^3 + eta0^4/2
  const auto& t = table_entries();
  const double weights[6] = {1.0, 0.5, 1.0, 4.0, 2.0, 2.0};  // order of the table
  // table order: eta0^3, eta0^4, w0, w0 eta0, w0 eta0^2, w0^2
  long double one = 0, pi2 = 0, pi4 = 0, z3 = 0;
  for (int i = 0; i < 6; ++i) {
    one += weights[i] * t[i].normalized.one.value();
    pi2 += weights[i] * t[i].normalized.pi2.value();
    pi4 += weights[i] * t[i].normalized.pi4.value();
    z3 += weights[i] * t[i].normalized.zeta3.value();
  }
  // beta = -(2/pi) * raw = -normalized combination
  CHECK(std::abs(static_cast<double>(-one) + 6.0) <= 1e-12);
  CHECK(std::abs(static_cast<double>(-pi2) + 1.0 / 3.0) <= 1e-12);
  CHECK(std::abs(static_cast<double>(pi4)) <= 1e-15);
  CHECK(std::abs(static_cast<double>(z3)) <= 1e-15);

  double s = 0.0;
  for (int i = 7; i < 14; ++i) s += t[i].closed_form_value();
  CHECK(std::abs(s + 2.0) <= 1e-12);
}
