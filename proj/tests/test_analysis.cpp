#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mtlab/analysis.hpp"

using namespace mtlab;

namespace {
constexpr double kPi = std::numbers::pi;

// Independent fixed-step RK4 for the rescaled problem with h = 0, in
// t = log r: eta'' = -4 e^{2t} (1 + eta/mu^2) e^{2 eta + eta^2/mu^2}.
// Returns the energy at the crossing eta = -mu^2.
double rk4_energy(double mu, double dt) {
  const double m2 = mu * mu;
  auto f = [m2](double t, const double* y, double* d) {
    const double s = 1.0 + y[0] / m2;
    const double w = std::exp(2.0 * t + 2.0 * y[0] + y[0] * y[0] / m2);
    d[0] = y[1];
    d[1] = -4.0 * s * w;
    d[2] = 8.0 * kPi * s * s * w;
  };
  double t = -12.0;
  const double r2 = std::exp(2.0 * t);
  double y[3] = {-r2, -2.0 * r2, 4.0 * kPi * r2};  // series start
  for (;;) {
    double k1[3], k2[3], k3[3], k4[3], tmp[3];
    f(t, y, k1);
    for (int i = 0; i < 3; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    f(t + 0.5 * dt, tmp, k2);
    for (int i = 0; i < 3; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    f(t + 0.5 * dt, tmp, k3);
    for (int i = 0; i < 3; ++i) tmp[i] = y[i] + dt * k3[i];
    f(t + dt, tmp, k4);
    double next[3];
    for (int i = 0; i < 3; ++i) next[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (next[0] <= -m2) {
      // eta is nearly linear in t here; interpolate the energy linearly
      const double th = (-m2 - y[0]) / (next[0] - y[0]);
      return y[2] + th * (next[2] - y[2]);
    }
    for (int i = 0; i < 3; ++i) y[i] = next[i];
    t += dt;
  }
}
}  // namespace

TEST_CASE("coefficient windows") {
  auto w = coefficient_window(no_perturbation());
  CHECK(w.lo == doctest::Approx(4.0 * kPi));
  CHECK(w.hi == doctest::Approx(6.0 * kPi));
  auto inv = coefficient_window(make_family("inverse-square", {{"a", 1.0}}));
  CHECK(inv.lo == doctest::Approx(0.0).scale(1.0));
  CHECK(inv.hi == doctest::Approx(2.0 * kPi));
}

TEST_CASE("energy matches an independent fixed-step oracle") {
  for (double mu : {2.0, 6.0}) {
    const double oracle = rk4_energy(mu, 2e-4);
    const double e = shoot(mu, no_perturbation()).energy_total;
    CHECK(e == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("expansion scan bookkeeping and the outer bound 8 pi / mu^4") {
  auto scan = energy_scan({6.0, 8.0, 10.0}, no_perturbation());
  REQUIRE(scan.c_values.size() == 3);
  CHECK(scan.failures.empty());
  for (std::size_t i = 0; i < 3; ++i) {
    const double mu4 = std::pow(scan.mu_values[i], 4);
    CHECK(scan.c_values[i] == doctest::Approx(mu4 * (scan.energies[i] - 4.0 * kPi)));
    CHECK(scan.inner_coeffs[i] + scan.outer_coeffs[i] == doctest::Approx(scan.c_values[i]));
    CHECK(scan.outer_coeffs[i] > 0.0);
    CHECK(scan.outer_coeffs[i] <= 8.0 * kPi);
    CHECK(scan.c_values[i] >= 4.0 * kPi);
  }
  // c decreases towards its limit
  CHECK(scan.c_values[0] > scan.c_values[1]);
  CHECK(scan.c_values[1] > scan.c_values[2]);
}

TEST_CASE("first residual decays like mu^-2") {
  auto a = residual_hierarchy(6.0, no_perturbation());
  auto b = residual_hierarchy(12.0, no_perturbation());
  CHECK(b.sup_w_err <= 0.5 * a.sup_w_err);
  CHECK(b.sup_z_err < a.sup_z_err);
  CHECK(a.phi_range > 0.0);
}

TEST_CASE("inverse-square fit") {
  std::vector<double> x{6, 8, 10, 12}, y;
  for (double v : x) y.push_back(3.0 - 5.0 / (v * v));
  auto f = fit_inverse_square(x, y);
  CHECK(f[0] == doctest::Approx(3.0));
  CHECK(f[1] == doctest::Approx(-5.0));
  CHECK(f[2] <= 1e-12);
  CHECK_THROWS(fit_inverse_square({1.0}, {1.0}));
}

TEST_CASE("branch scan on a coarse grid") {
  std::vector<double> grid;
  for (double mu = 0.1; mu <= 8.0; mu += 0.5) grid.push_back(mu);
  auto scan = branch_scan(grid, no_perturbation(), {12.6});
  CHECK(scan.lambda_star > 4.0 * kPi);
  CHECK(scan.points.front().energy < 0.5);
  REQUIRE(scan.queries.size() == 1);
  CHECK(scan.queries[0].roots.size() >= 2);
  for (const auto& r : scan.queries[0].roots) CHECK(std::abs(r.energy - 12.6) <= 1e-6);
}

TEST_CASE("concentration and subcritical bound") {
  auto c = concentration_check(12.0);
  CHECK(c.deviation < 1e-3);
  CHECK(c.limit == doctest::Approx(4.0 * kPi * 1e4 / (1.0 + 1e4)));
  auto s = subcritical_bound(shoot(2.0, no_perturbation()));
  CHECK(s.applicable);
  CHECK(s.holds);
}
