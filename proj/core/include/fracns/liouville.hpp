#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracns/field.hpp"

namespace fracns {

/// Boundary terms of the truncated energy identity at one radius, with
/// L = (-Delta)^{alpha/4} and theta = theta_R:
///   I_a = int L u . [theta L u - L(theta u)]
///   I_b = int grad theta . (|u|^2 u / 2)     (annulus R/2 < r < R only)
///   I_c = int grad theta . (p u)             (annulus only)
///   truncated_energy = int_{r < R/2} |L u|^2
struct TruncatedTerms {
  double R = 0.0;
  double I_a = 0.0;
  double I_b = 0.0;
  double I_c = 0.0;
  double truncated_energy = 0.0;
};

/// Takes grid samples of u and p directly so that far-field values are not
/// polluted by transform round-off; the spectral overload transforms first.
TruncatedTerms truncated_terms(const PhysicalField& u, const PhysicalField& p, double alpha, double R);
TruncatedTerms truncated_terms(const SpectralField& u, const SpectralField& p, double alpha, double R);

struct IdentityDefect {
  double lhs = 0.0;
  double rhs = 0.0;
  /// Natural magnitude of the two sides, used to normalise the defect.
  double scale = 0.0;
  double defect() const;
};

struct IdentityReport {
  /// int L u . L(theta u)  vs  int theta |L u|^2 - I_a
  IdentityDefect commutator;
  /// int (u.grad)u . theta u  vs  -I_b
  IdentityDefect nonlinear;
  /// int grad p . theta u  vs  -I_c
  IdentityDefect pressure;
  /// int u . [(theta u).grad](theta u)  vs  0
  IdentityDefect null;
};

IdentityReport integration_identities_check(const PhysicalField& u, const PhysicalField& p,
                                            double alpha, double R);

/// Manufactured-solution check of the whole identity: with
/// f = (-Delta)^{alpha/2} u + (u.grad)u + grad p and p recovered from u,
///   int theta |L u|^2 = I_a + I_b + I_c + int f . theta u.
IdentityDefect energy_identity_check(const PhysicalField& u, double alpha, double R);

struct DecayExponents {
  std::optional<double> I_a, I_b, I_c;
};

struct RegimeFlags {
  /// 1 + eps/3 <= alpha <= 5/3 + 2 eps/9 (for 1 < alpha < 2)
  bool condition_9 = false;
  /// 1 - eps/3 <= alpha <= 5/3 - 2 eps/9 (for 3/5 < alpha < 1)
  bool condition_10 = false;
  std::vector<std::string> warnings;
};

RegimeFlags regime_flags(double alpha, double eps_param);
DecayExponents predicted_exponents(double alpha, double eps_param, double nu);

/// Least-squares slope of log|value| against log R over radii >= R_max/10
/// with |value| > 1e-14; empty with fewer than two usable points.
std::optional<double> fit_slope(const std::vector<double>& radii, const std::vector<double>& values);

struct LiouvilleReport {
  double alpha = 0.0;
  double eps_param = 0.0;
  double nu = 0.5;
  std::vector<TruncatedTerms> rows;
  double total_energy = 0.0;
  DecayExponents slopes;
  DecayExponents predicted;
  /// slope <= predicted + 0.3, when both exist.
  std::optional<bool> within_a, within_b, within_c;
  RegimeFlags regime;
  bool energy_monotone = true;
  bool energy_bounded = true;
  /// |I_a|, |I_b|, |I_c| strictly decreasing over the scan.
  bool decreasing_a = true, decreasing_b = true, decreasing_c = true;
};

inline constexpr double kSlopeSlack = 0.3;

/// Requires increasing radii in (0, box_len/2) and 0 < eps_param < 2 alpha.
/// Regime violations are recorded as warnings.
LiouvilleReport decay_scan(const PhysicalField& u, const PhysicalField& p, double alpha,
                           double eps_param, const std::vector<double>& radii, double nu = 0.5);

/// CSV with columns R,I_a,I_b,I_c,truncated_energy.
std::string liouville_csv(const LiouvilleReport& report);

struct PressureBound {
  double p_norm = 0.0;  // ||p||_{L^{q/2}}
  double bound = 0.0;   // ||u||_{L^q}^2
  double ratio() const { return bound > 0.0 ? p_norm / bound : 0.0; }
};

/// Synthetic decaying field u = curl(a G) about the box center, with
/// a = (y^2, z^2 + x y, x^2) and G = exp(-r^2 / (2 sigma^2)), sampled from its
/// closed form (divergence-free analytically).
PhysicalField gaussian_curl_field(const Grid& grid, double sigma);

/// Pressure recovered from u against the quadratic bound; requires 2 < q < inf.
PressureBound pressure_integrability(const SpectralField& u, double q);

}  // namespace fracns
