#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fracns/field.hpp"

namespace fracns {

struct Stage {
  double epsilon = 0.1;
  double R = 1.0;
};

/// Parameters of the regularized fixed-point map
///   T(u) = lambda * -[-eps Delta + (-Delta)^{alpha/2}]^{-1} (P [(theta_R u).grad](theta_R u) - f).
/// R = +infinity switches the cutoff off (theta = 1).
struct SolverParams {
  double alpha = 1.5;
  double epsilon = 0.1;
  double R = std::numeric_limits<double>::infinity();
  double lambda = 1.0;
  double damping = 1.0;
  double tol_residual = 1e-10;
  int max_iter = 200;
  std::vector<Stage> schedule;

  /// Throws PreconditionError naming the offending field.
  void validate(const Grid& grid) const;
};

/// Checks a continuation schedule: nonempty, eps nonincreasing, R
/// nondecreasing, consecutive stages distinct.
void validate_schedule(const std::vector<Stage>& schedule, const Grid& grid);

enum class SolveStatus { converged, diverged, nan_abort };
std::string to_string(SolveStatus status);

struct LedgerEntry {
  int iter = 0;
  double h1 = 0.0;
  double halpha = 0.0;
  double residual = 0.0;
  double step = 0.0;
};

struct Solution {
  explicit Solution(const Grid& grid) : velocity(grid, 3), pressure(grid, 1) {}

  SpectralField velocity;
  /// Regularized pressure (-Delta)^{-1} div [(theta u).grad](theta u).
  SpectralField pressure;
  /// H^{-alpha/2} norm of the regularized system at the returned velocity.
  double residual_norm = 0.0;
  /// Unregularized residual (eps = 0, theta = 1, pressure from u) at the
  /// returned velocity.
  double physical_residual = 0.0;
  /// ||u - T(u)||_{H^{alpha/2}} at the returned velocity.
  double fixed_point_defect = 0.0;
  /// Magnitude of the k = 0 coefficient of the truncated nonlinearity that
  /// the torus cannot balance and is dropped.
  double dropped_mean = 0.0;
  int iterations_used = 0;
  SolveStatus status = SolveStatus::diverged;
  std::string message;
  std::vector<LedgerEntry> ledger;

  bool converged() const { return status == SolveStatus::converged; }
};

/// [(theta u).grad](theta u), dealiased, k = 0 coefficient kept.
SpectralField truncated_nonlinearity(const SpectralField& u, double R);

/// One application of T. Requires mean-free u, f and divergence-free f.
SpectralField apply_T(const SpectralField& u, const SpectralField& f, const SolverParams& p);

/// Damped Picard iteration from zero (or from `initial`). Stops when both the
/// relative H^{alpha/2} step and the regularized residual drop below
/// tol_residual.
Solution picard_solve(const SpectralField& f, const SolverParams& p);
Solution picard_solve(const SpectralField& f, const SolverParams& p, const SpectralField& initial);

struct ContinuationResult {
  std::vector<Solution> stages;
  /// H^{alpha/2} distance between consecutive stage solutions.
  std::vector<double> distances;
  /// Index of the stage that failed to converge, or -1.
  int failed_stage = -1;
};

/// Runs picard_solve along p.schedule, warm-starting each stage.
ContinuationResult continuation_solve(const SpectralField& f, const SolverParams& p);

/// p = (-Delta)^{-1} div div(u (x) u) with a dealiased tensor product.
/// Rejects u whose divergence exceeds 1e-10 relative.
SpectralField recover_pressure(const SpectralField& u);
/// Regularized pressure (-Delta)^{-1} div [(theta u).grad](theta u).
SpectralField recover_pressure(const SpectralField& u, double R);
/// Same tensor formula applied to grid samples, without the divergence
/// check. For fields that are solenoidal analytically but whose samples are
/// not band-limited.
SpectralField pressure_from_samples(const PhysicalField& u);

/// H^{-alpha/2} norm of (-Delta)^{alpha/2} u + (u.grad)u + grad p - f, k = 0
/// coefficient removed.
double residual(const SpectralField& u, const SpectralField& p, const SpectralField& f,
                double alpha);
/// Same for the regularized, lambda-scaled system
/// -eps Delta u + (-Delta)^{alpha/2} u + lambda ((theta u).grad(theta u) + grad p - f).
double residual(const SpectralField& u, const SpectralField& p, const SpectralField& f,
                const SolverParams& params);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  /// rhs - lhs.
  double slack = 0.0;
  /// slack / rhs (0 when both sides vanish).
  double relative_slack = 0.0;
  bool holds = true;
};

struct EnergyReport {
  double h1 = 0.0;
  double halpha = 0.0;
  double f_norm = 0.0;
  /// eps |u|_{H^1}^2 + |u|_{H^{a/2}}^2 <= lambda |u|_{H^{a/2}} |f|_{H^{-a/2}}
  InequalityCheck energy;
  /// |u|_{H^1} <= |f|_{H^{-a/2}} / sqrt(2 eps)
  InequalityCheck h1_bound;
  /// |u|_{H^{a/2}} <= |f|_{H^{-a/2}}
  InequalityCheck uniform_bound;

  bool all_hold() const { return energy.holds && h1_bound.holds && uniform_bound.holds; }
};

/// Relative violation allowance used by the energy checks.
inline constexpr double kEnergyAllowance = 1e-8;

EnergyReport energy_inequality_check(const SpectralField& u, const SpectralField& f,
                                     const SolverParams& p);
EnergyReport energy_inequality_check(const Solution& sol, const SpectralField& f,
                                     const SolverParams& p);

struct NullIdentity {
  /// int u . [(theta u).grad](theta u) dx
  double value = 0.0;
  /// ||u||_{L^3}^3
  double scale = 0.0;
  double relative() const { return scale > 0.0 ? std::abs(value) / scale : std::abs(value); }
};

/// Evaluates the pairing of u with the truncated nonlinearity (zero for
/// solenoidal u in the continuum).
NullIdentity null_identity(const SpectralField& u, double R);

/// CSV with columns iter,H1,Halpha2,residual.
std::string ledger_csv(const std::vector<LedgerEntry>& ledger);

}  // namespace fracns
