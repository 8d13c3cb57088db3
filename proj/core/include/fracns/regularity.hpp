#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracns/field.hpp"

namespace fracns {

enum class BootstrapMode { subcritical, bounded_hypothesis };

BootstrapMode parse_bootstrap_mode(const std::string& name);
std::string to_string(BootstrapMode mode);

/// sigma = 2 alpha - 5/2 (subcritical, 5/3 < alpha < 2) or
/// sigma = 3 alpha / 2 - 1 (bounded_hypothesis, 1 < alpha <= 5/3).
/// Rejects alpha outside the mode's range and any sigma <= alpha/2.
double bootstrap_exponent(double alpha, BootstrapMode mode);

/// sigma_k = sigma_1 + (k - 1)(sigma_1 - alpha/2), k = 1, 2, ..., stopping at
/// the first term >= target_order.
std::vector<double> iterate_bootstrap(double alpha, BootstrapMode mode, double target_order);

enum class TailVerdict { finite, not_finite, inconclusive };
std::string to_string(TailVerdict verdict);

struct TailFit {
  TailVerdict verdict = TailVerdict::inconclusive;
  /// Slope of log E against log kappa over the upper half of the shells;
  /// absent when fewer than two shells there carry energy.
  std::optional<double> tail_slope;
  /// E(last shell) / sum E.
  double last_shell_fraction = 0.0;
  /// kappa^{2s} E(last shell) / sum_kappa kappa^{2s} E.
  double last_increment = 0.0;
};

/// Shell energies E(b), b = 0..n/2, with b = floor(|m| + 1/2); modes with
/// b > n/2 (cube corners) are not part of any complete shell and are skipped.
std::vector<double> shell_spectrum(const SpectralField& u);

/// Decides whether ||u||_{H^s} is numerically finite from the Cauchy
/// behaviour of the shell partial sums. Requires a mean-free field.
TailFit spectral_tail_fit(const SpectralField& u, double s_probe);

inline constexpr double kTailResolvedFraction = 1e-3;
inline constexpr double kTailIncrement = 1e-6;

}  // namespace fracns
