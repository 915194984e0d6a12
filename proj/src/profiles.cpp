#include "mtlab/profiles.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mtlab/gauss_kronrod.hpp"

namespace mtlab {

namespace {

void require_radius(double r) {
  if (!std::isfinite(r)) throw std::invalid_argument("profile radius must be finite");
  if (r < 0.0) throw std::invalid_argument("profile radius must be non-negative");
}

// s / (e^s - 1), with the removable point at s = 0 handled by its series.
double bose_kernel(double s) {
  if (std::abs(s) < 1e-4) return 1.0 - s / 2.0 + s * s / 12.0;
  return s / std::expm1(s);
}

}  // namespace

double dilog_integral(double r) {
  require_radius(r);
  if (r == 0.0) return 0.0;
  // With t = e^s the integrand becomes -s - s/(e^s - 1); the linear part
  // integrates exactly and only the bounded kernel is left to quadrature.
  const double top = std::log1p(r * r);
  const auto res = gk::integrate(bose_kernel, 0.0, top, 1e-14, 0.0);
  return -0.5 * top * top - res.value;
}

double eta0(double r) { return -std::log1p(r * r); }

double zeta0(double r) { return -r * r / (1.0 + r * r); }

double psi0(double r) {
  const double q = 1.0 + r * r;
  return (r * r - 1.0) / (q * q * q);
}

double xi(double r) { return 1.0 + std::log1p(r); }

double w0(double r) {
  require_radius(r);
  if (r < 1e-4) return 0.25 * r * r * r * r;
  const double x = r * r;
  const double e = -std::log1p(x);
  return e + 2.0 * x / (1.0 + x) - 0.5 * e * e +
         (1.0 - x) / (1.0 + x) * dilog_integral(r);
}

double r_dw0(double r) {
  require_radius(r);
  if (r < 1e-3) return r * r * r * r;
  const double x = r * r;
  const double q = 1.0 + x;
  const double l = std::log1p(x);
  // Term-by-term derivative of the closed form; the two log^2 pieces
  // (from -eta0^2/2 and from the dilogarithm factor) combine into -2l/q.
  return -2.0 * x / q + 4.0 * x / (q * q) - 2.0 * l / q -
         4.0 * x / (q * q) * dilog_integral(r);
}

ProfileValue eval_profile(ProfileId id, double r) {
  require_radius(r);
  const double x = r * r;
  const double q = 1.0 + x;
  switch (id) {
    case ProfileId::Eta0:
      return {-std::log1p(x), -2.0 * r / q};
    case ProfileId::W0: {
      const double rd = r_dw0(r);
      return {w0(r), r < 1e-3 ? r * r * r : rd / r};
    }
    case ProfileId::Zeta0:
      return {-x / q, -2.0 * r / (q * q)};
    case ProfileId::Psi:
      return {(x - 1.0) / q, 4.0 * r / (q * q)};
    case ProfileId::Psi0:
      return {(x - 1.0) / (q * q * q), 4.0 * r * (2.0 - x) / (q * q * q * q)};
    case ProfileId::Xi:
      return {1.0 + std::log1p(r), 1.0 / (1.0 + r)};
  }
  throw std::invalid_argument("unknown profile id");
}

std::string_view profile_name(ProfileId id) {
  switch (id) {
    case ProfileId::Eta0: return "eta0";
    case ProfileId::W0: return "w0";
    case ProfileId::Zeta0: return "zeta0";
    case ProfileId::Psi: return "psi";
    case ProfileId::Psi0: return "psi0";
    case ProfileId::Xi: return "xi";
  }
  return "?";
}

ProfileId profile_from_name(std::string_view name) {
  for (auto id : {ProfileId::Eta0, ProfileId::W0, ProfileId::Zeta0, ProfileId::Psi,
                  ProfileId::Psi0, ProfileId::Xi})
    if (profile_name(id) == name) return id;
  throw std::invalid_argument("unknown profile: " + std::string(name));
}

}  // namespace mtlab
