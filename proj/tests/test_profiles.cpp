#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mtlab/profiles.hpp"

using namespace mtlab;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent Li2(-x) oracle: power series for x <= 1/2, the inversion
// formula for x >= 2, composite Simpson on the defining integral between.
double li2_series(double z) {
  double term = z, sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    sum += term / (static_cast<double>(k) * k);
    term *= z;
  }
  return sum;
}

double li2_simpson(double x) {
  // int_1^{1+x} log t / (1 - t) dt, integrand -> -1 at t = 1
  auto f = [](double t) { return std::abs(t - 1.0) < 1e-12 ? -1.0 : std::log(t) / (1.0 - t); };
  const int n = 200000;
  const double h = x / n;
  double s = f(1.0) + f(1.0 + x);
  for (int i = 1; i < n; ++i) s += f(1.0 + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

double li2_neg(double x) {
  if (x <= 0.5) return li2_series(-x);
  if (x >= 2.0) {
    const double l = std::log(x);
    return -kPi * kPi / 6.0 - 0.5 * l * l - li2_series(-1.0 / x);
  }
  return li2_simpson(x);
}

// Hand-derived Laplacians, L f = f'' + f'/r.
double lap_eta0(double r) {
  const double q = 1.0 + r * r;
  return -4.0 / (q * q);
}
double lap_zeta0(double r) {
  const double q = 1.0 + r * r;
  return (4.0 * r * r - 4.0) / (q * q * q);
}
double psi(double r) { return (r * r - 1.0) / (1.0 + r * r); }
double lap_psi(double r) {
  // psi = 1 - 2/q, r psi' = 4 r^2 / q^2
  const double q = 1.0 + r * r;
  return (8.0 / (q * q) - 16.0 * r * r / (q * q * q));
}

}  // namespace

TEST_CASE("eta0 values") {
  auto v = eval_profile(ProfileId::Eta0, 1.0);
  CHECK(v.value == doctest::Approx(-std::log(2.0)).epsilon(1e-15));
  CHECK(v.derivative == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("w0 at origin and at r = 1") {
  auto v0 = eval_profile(ProfileId::W0, 0.0);
  CHECK(v0.value == 0.0);
  CHECK(v0.derivative == 0.0);
  // at r = 1 the dilogarithm term carries the factor 1 - r^2 = 0
  const double l2 = std::log(2.0);
  auto v1 = eval_profile(ProfileId::W0, 1.0);
  CHECK(std::abs(v1.value - (1.0 - l2 - 0.5 * l2 * l2)) <= 1e-15);
  CHECK(v1.value == doctest::Approx(0.0666263).epsilon(1e-6));
}

TEST_CASE("zeta0 and psi0 zeros") {
  CHECK(eval_profile(ProfileId::Zeta0, 0.0).value == 0.0);
  CHECK(eval_profile(ProfileId::Zeta0, 0.0).derivative == 0.0);
  CHECK(eval_profile(ProfileId::Psi0, 1.0).value == 0.0);
}

TEST_CASE("profile derivatives match hand formulas") {
  for (double r : {0.0, 1e-3, 0.3, 1.0, 2.5, 40.0, 1e3}) {
    const double q = 1.0 + r * r;
    CHECK(eval_profile(ProfileId::Eta0, r).derivative == doctest::Approx(-2 * r / q).epsilon(1e-14));
    CHECK(eval_profile(ProfileId::Zeta0, r).derivative ==
          doctest::Approx(-2 * r / (q * q)).epsilon(1e-14));
    CHECK(eval_profile(ProfileId::Psi, r).value == doctest::Approx(psi(r)).epsilon(1e-14));
    CHECK(eval_profile(ProfileId::Psi, r).derivative == doctest::Approx(4 * r / (q * q)).epsilon(1e-14));
    CHECK(eval_profile(ProfileId::Xi, r).value == doctest::Approx(1 + std::log1p(r)).epsilon(1e-15));
  }
}

TEST_CASE("Liouville-type identities hold pointwise") {
  for (int i = 0; i <= 300; ++i) {
    const double r = i == 0 ? 0.0 : std::pow(10.0, -4.0 + 7.0 * i / 300.0);
    const double e2 = std::exp(2.0 * eta0(r));
    CHECK(std::abs(-lap_eta0(r) - 4.0 * e2) <= 1e-12);
    CHECK(std::abs(-lap_zeta0(r) - 4.0 * e2 * (1.0 + 2.0 * zeta0(r))) <= 1e-12);
    CHECK(std::abs(-lap_psi(r) - 8.0 * e2 * psi(r)) <= 1e-12);
    CHECK(zeta0(r) == doctest::Approx(-r * r / (1 + r * r)).epsilon(1e-14));
  }
}

TEST_CASE("w0 satisfies its equation (finite-difference check on r w0')") {
  for (double r : {0.05, 0.5, 1.0, 3.0, 20.0, 300.0}) {
    const double h = 1e-3 * r;
    const double d = (-r_dw0(r + 2 * h) + 8 * r_dw0(r + h) - 8 * r_dw0(r - h) + r_dw0(r - 2 * h)) /
                     (12 * h);
    const double lap = d / r;
    const double e = eta0(r);
    const double rhs = 4.0 * std::exp(2 * e) * (e + e * e + 2 * w0(r));
    CHECK(std::abs(-lap - rhs) <= 1e-8 * (1 + std::abs(rhs)));
  }
}

TEST_CASE("w0 derivative consistent with r_dw0") {
  for (double r : {1e-4, 1e-2, 0.7, 5.0, 1e4}) {
    CHECK(eval_profile(ProfileId::W0, r).derivative * r == doctest::Approx(r_dw0(r)).epsilon(1e-12));
  }
}

TEST_CASE("dilog integral against independent oracle") {
  CHECK(dilog_integral(0.0) == 0.0);
  CHECK(std::abs(dilog_integral(1.0) + kPi * kPi / 12.0) <= 1e-12);
  for (double r : {0.1, 0.5, 0.8, 1.2, 1.5, 3.0, 10.0, 100.0, 1e4}) {
    CHECK(std::abs(dilog_integral(r) - li2_neg(r * r)) <= 1e-11);
  }
  const double l = std::log(100.0);
  CHECK(std::abs(dilog_integral(100.0) / (-2 * l * l) - 1.0) < 0.05);
}

TEST_CASE("dilog integral continuous across the series switch") {
  double prev = dilog_integral(1e-3);
  for (int i = 1; i <= 200; ++i) {
    const double r = 1e-3 * std::pow(1.05, i);
    const double v = dilog_integral(r);
    CHECK(v < prev);  // strictly decreasing in r
    prev = v;
  }
}

TEST_CASE("w0 minus eta0 bounded, r w0' tends to -2") {
  double lo = 1e300, hi = -1e300;
  for (int i = 0; i <= 120; ++i) {
    const double r = std::pow(10.0, 6.0 * i / 120.0);
    const double d = w0(r) - eta0(r);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  CHECK(hi - lo < 10.0);
  for (int i = 0; i <= 40; ++i) {
    const double r = std::pow(10.0, 2.0 + 4.0 * i / 40.0);
    const double l = std::log(r);
    CHECK(std::abs(r_dw0(r) + 2.0) <= 20.0 * l * l / (r * r));
  }
  CHECK(std::abs(r_dw0(1e6) + 2.0) < 1e-4);
}

TEST_CASE("names round trip and bad input") {
  for (auto id : {ProfileId::Eta0, ProfileId::W0, ProfileId::Zeta0, ProfileId::Psi, ProfileId::Psi0,
                  ProfileId::Xi})
    CHECK(profile_from_name(profile_name(id)) == id);
  CHECK_THROWS_AS(profile_from_name("nope"), std::invalid_argument);
  CHECK_THROWS_AS(eval_profile(ProfileId::W0, std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(eval_profile(ProfileId::W0, -1.0), std::invalid_argument);
}
