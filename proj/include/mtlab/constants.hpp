#pragma once

// Fixed numerical slacks used when finite-mu results are compared against
// asymptotic statements. Kept in one place so every threshold can be audited.

namespace mtlab {

/// Additive slack on coefficient windows for mu^4 (E - 4 pi).
inline constexpr double kCoefficientSlack = 0.5;
/// Factor allowed on top of the predicted mu^-2 rate between mu = 6 and 12.
inline constexpr double kRateFactor = 2.0;
/// Condition-checker verdict thresholds on envelope(last) / envelope(mid).
inline constexpr double kSatisfiedRatio = 0.1;
inline constexpr double kViolatedRatio = 0.5;

/// Default integrator tolerance for shots.
inline constexpr double kShotTolerance = 1e-12;
/// Inner/outer split exponent p, s = mu^p.
inline constexpr double kSplitExponent = 3.0;
/// Admissible centre values for a shot.
inline constexpr double kMuMin = 0.05;
inline constexpr double kMuMax = 24.0;

/// Branch root refinement |E(mu) - Lambda|.
inline constexpr double kBranchRootTolerance = 1e-6;
/// Accepted PDE residual of a verified critical point.
inline constexpr double kResidualTolerance = 1e-7;

/// First zero of J0 squared, the first Dirichlet eigenvalue of the unit disk.
inline constexpr double kLambda1Disk = 5.783185962946784;

}  // namespace mtlab
