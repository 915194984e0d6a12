#pragma once

// Closed-form limit profiles of the blow-up analysis and their radial
// derivatives. All functions are radial: f(x) = f(r), r = |x|.

#include <string_view>

namespace mtlab {

enum class ProfileId {
  Eta0,   ///< -log(1 + r^2), the standard Liouville bubble
  W0,     ///< first-order correction, solves -Lw = 4e^{2 eta0}(eta0 + eta0^2 + 2w)
  Zeta0,  ///< -1 + 1/(1 + r^2)
  Psi,    ///< (r^2 - 1)/(1 + r^2), kernel element of the linearized operator
  Psi0,   ///< (r^2 - 1)/(1 + r^2)^3, the slope-extraction weight
  Xi,     ///< 1 + log(1 + r), growth envelope for the remainder
};

struct ProfileValue {
  double value = 0.0;
  double derivative = 0.0;
};

ProfileValue eval_profile(ProfileId id, double r);

std::string_view profile_name(ProfileId id);
ProfileId profile_from_name(std::string_view name);

/// Integral of log(t)/(1 - t) over [1, 1 + r^2], computed by adaptive
/// Gauss-Kronrod quadrature to absolute accuracy 1e-12. Equals Li2(-r^2).
double dilog_integral(double r);

// Value-only shorthands used throughout the numerics.
double eta0(double r);
double w0(double r);
double zeta0(double r);
double psi0(double r);
double xi(double r);

/// r * w0'(r), evaluated without cancellation for large r.
double r_dw0(double r);

}  // namespace mtlab
