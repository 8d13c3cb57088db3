#include "fracns/solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <utility>

#include "fracns/csv.hpp"
#include "fracns/cutoff.hpp"
#include "fracns/error.hpp"
#include "fracns/forcing.hpp"
#include "fracns/norms.hpp"
#include "fracns/spectral.hpp"
#include "fracns/transform.hpp"
#include "lattice.hpp"

namespace fracns {

using detail::for_each_mode;
using detail::Mode;

namespace {

bool has_cutoff(double R) { return std::isfinite(R); }

// Applies A = eps|k|^2 + |k|^alpha (a = +1) or its inverse (a = -1); k = 0 -> 0.
SpectralField apply_symbol(const SpectralField& v, double epsilon, double alpha, int power) {
  SpectralField out(v.grid(), v.components());
  for_each_mode(v.grid(), [&](const Mode& m) {
    if (m.is_zero()) return;
    const double k2 = m.k2();
    const double a = epsilon * k2 + std::pow(k2, 0.5 * alpha);
    const double factor = power > 0 ? a : 1.0 / a;
    for (int c = 0; c < v.components(); ++c) out.component(c)[m.index] = factor * v.component(c)[m.index];
  });
  return out;
}

SpectralField pressure_from_divergence(const SpectralField& div) {
  SpectralField p(div.grid(), 1);
  auto dst = p.component(0);
  const auto src = div.component(0);
  for_each_mode(div.grid(), [&](const Mode& m) {
    if (m.is_zero()) return;
    dst[m.index] = src[m.index] / m.k2();
  });
  return p;
}

double divergence_defect(const SpectralField& u) {
  double scale = 0.0;
  for_each_mode(u.grid(), [&](const Mode& m) {
    const double d = std::sqrt(m.d2());
    for (int c = 0; c < 3; ++c) scale = std::max(scale, d * std::abs(u.component(c)[m.index]));
  });
  const double div = divergence(u).max_abs_coefficient();
  return scale > 0.0 ? div / scale : div;
}

void require_solenoidal(const SpectralField& u, const char* where) {
  require_vector(u.components(), where);
  if (divergence_defect(u) > 1e-10) {
    throw PreconditionError(std::string(where) + ": velocity is not divergence-free");
  }
}

// Everything one Picard step needs from the current iterate.
struct Evaluation {
  SpectralField projected;  // P N with the k = 0 coefficient dropped
  SpectralField image;      // T(u)
  double residual;
  double dropped_mean;
};

Evaluation evaluate(const SpectralField& u, const SpectralField& f, const SolverParams& p) {
  SpectralField n = truncated_nonlinearity(u, p.R);
  double mean = 0.0;
  for (int c = 0; c < 3; ++c) {
    mean = std::max(mean, std::abs(n.zero_mode(c)));
    n.zero_mode(c) = Complex{};
  }
  SpectralField pn = leray_project(n);
  SpectralField rhs = pn - f;
  SpectralField image = apply_symbol(rhs, p.epsilon, p.alpha, -1);
  image *= -p.lambda;

  SpectralField lhs = apply_symbol(u, p.epsilon, p.alpha, +1);
  lhs += p.lambda * rhs;
  for (int c = 0; c < 3; ++c) lhs.zero_mode(c) = Complex{};
  const double res = sobolev_norm(lhs, -0.5 * p.alpha);
  return {std::move(pn), std::move(image), res, mean};
}

void check_inputs(const SpectralField& f, const SolverParams& p) {
  p.validate(f.grid());
  validate_forcing(f);
}

InequalityCheck inequality(double lhs, double rhs) {
  InequalityCheck c;
  c.lhs = lhs;
  c.rhs = rhs;
  c.slack = rhs - lhs;
  c.relative_slack = rhs > 0.0 ? c.slack / rhs : (lhs > 0.0 ? -1.0 : 0.0);
  c.holds = c.relative_slack >= -kEnergyAllowance || (rhs == 0.0 && lhs <= 1e-300);
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------

void validate_schedule(const std::vector<Stage>& schedule, const Grid& grid) {
  if (schedule.empty()) throw PreconditionError("solver.schedule: must not be empty");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const auto& s = schedule[i];
    const std::string at = "solver.schedule[" + std::to_string(i) + "]";
    if (!(s.epsilon > 0.0) || !std::isfinite(s.epsilon)) throw PreconditionError(at + ": epsilon must be > 0");
    if (has_cutoff(s.R) && !(s.R > 1.0 && s.R < grid.center())) {
      throw PreconditionError(at + ": R must lie in (1, box_len/2)");
    }
    if (i == 0) continue;
    const auto& prev = schedule[i - 1];
    if (s.epsilon > prev.epsilon) throw PreconditionError(at + ": epsilon must not increase");
    if (s.R < prev.R) throw PreconditionError(at + ": R must not decrease");
    if (s.epsilon == prev.epsilon && s.R == prev.R) {
      throw PreconditionError(at + ": repeats the previous stage");
    }
  }
}

void SolverParams::validate(const Grid& grid) const {
  if (!(alpha > 0.0 && alpha < 2.0)) throw PreconditionError("solver.alpha must lie in (0, 2)");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw PreconditionError("solver.epsilon must be > 0");
  if (has_cutoff(R) && !(R > 1.0 && R < grid.center())) {
    throw PreconditionError("solver.R must lie in (1, box_len/2), or be inf to disable the cutoff");
  }
  if (std::isnan(R) || R < 0.0) throw PreconditionError("solver.R must be positive");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw PreconditionError("solver.lambda must lie in [0, 1]");
  if (!(damping > 0.0 && damping <= 1.0)) throw PreconditionError("solver.damping must lie in (0, 1]");
  if (!(tol_residual > 0.0)) throw PreconditionError("solver.tol_residual must be > 0");
  if (max_iter < 1) throw PreconditionError("solver.max_iter must be >= 1");
  if (!schedule.empty()) validate_schedule(schedule, grid);
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::diverged: return "diverged";
    case SolveStatus::nan_abort: return "nan_abort";
  }
  return "unknown";
}

SpectralField truncated_nonlinearity(const SpectralField& u, double R) {
  require_vector(u.components(), "truncated_nonlinearity");
  PhysicalField w = transform_inverse(u);
  if (has_cutoff(R)) {
    w = multiply(cutoff_field(u.grid(), R), w);
    return advective_term_spectral(w, transform_forward(w));
  }
  return advective_term_spectral(w, u);
}

SpectralField apply_T(const SpectralField& u, const SpectralField& f, const SolverParams& p) {
  require_same_shape(u, f, "apply_T");
  check_inputs(f, p);
  if (!is_mean_free(u)) throw PreconditionError("apply_T: u must be mean-free");
  return evaluate(u, f, p).image;
}

Solution picard_solve(const SpectralField& f, const SolverParams& p) {
  return picard_solve(f, p, SpectralField(f.grid(), 3));
}

Solution picard_solve(const SpectralField& f, const SolverParams& p, const SpectralField& initial) {
  require_same_shape(initial, f, "picard_solve");
  check_inputs(f, p);
  if (!is_mean_free(initial)) throw PreconditionError("picard_solve: initial guess must be mean-free");

  const double half = 0.5 * p.alpha;
  Solution sol(f.grid());
  SpectralField u = initial;
  Evaluation eval = evaluate(u, f, p);
  sol.status = SolveStatus::diverged;

  int it = 1;
  for (; it <= p.max_iter; ++it) {
    SpectralField next = (1.0 - p.damping) * u;
    next += p.damping * eval.image;
    const bool finite = std::isfinite(next.max_abs_coefficient());
    if (!finite) {
      sol.status = SolveStatus::nan_abort;
      sol.message = "non-finite iterate at iteration " + std::to_string(it) +
                    "; returning the last finite state";
      break;
    }
    const double step = sobolev_norm(next - u, half) / std::max(1.0, sobolev_norm(u, half));
    u = std::move(next);
    eval = evaluate(u, f, p);
    sol.ledger.push_back({it, sobolev_norm(u, 1.0), sobolev_norm(u, half), eval.residual, step});
    if (!std::isfinite(eval.residual)) {
      sol.status = SolveStatus::nan_abort;
      sol.message = "non-finite residual at iteration " + std::to_string(it);
      break;
    }
    if (step < p.tol_residual && eval.residual < p.tol_residual) {
      sol.status = SolveStatus::converged;
      break;
    }
  }
  sol.iterations_used = std::min(it, p.max_iter);
  if (sol.status == SolveStatus::diverged) {
    sol.message = "no convergence within " + std::to_string(p.max_iter) + " iterations";
  }

  sol.velocity = u;
  sol.residual_norm = eval.residual;
  sol.dropped_mean = eval.dropped_mean;
  sol.fixed_point_defect = sobolev_norm(eval.image - u, half);
  if (std::isfinite(eval.residual)) {
    sol.pressure = recover_pressure(u, p.R);
    sol.physical_residual = residual(u, recover_pressure(u), f, p.alpha);
  } else {
    sol.physical_residual = std::numeric_limits<double>::quiet_NaN();
  }
  return sol;
}

ContinuationResult continuation_solve(const SpectralField& f, const SolverParams& p) {
  validate_schedule(p.schedule, f.grid());
  ContinuationResult out;
  SpectralField start(f.grid(), 3);
  for (std::size_t i = 0; i < p.schedule.size(); ++i) {
    SolverParams stage = p;
    stage.epsilon = p.schedule[i].epsilon;
    stage.R = p.schedule[i].R;
    stage.schedule.clear();
    Solution sol = picard_solve(f, stage, start);
    if (!out.stages.empty()) {
      out.distances.push_back(sobolev_norm(sol.velocity - out.stages.back().velocity, 0.5 * p.alpha));
    }
    const bool ok = sol.converged();
    start = sol.velocity;
    out.stages.push_back(std::move(sol));
    if (!ok) {
      out.failed_stage = static_cast<int>(i);
      break;
    }
  }
  return out;
}

SpectralField recover_pressure(const SpectralField& u) {
  require_solenoidal(u, "recover_pressure");
  return pressure_from_samples(transform_inverse(u));
}

SpectralField pressure_from_samples(const PhysicalField& ux) {
  require_vector(ux.components(), "pressure_from_samples");
  const Grid& g = ux.grid();
  SpectralField divdiv(g, 1);
  auto dst = divdiv.component(0);
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      const SpectralField t = dealiased_product(ux, i, ux, j);
      const auto src = t.component(0);
      const double mult = i == j ? 1.0 : 2.0;
      // div div: (i d_i)(i d_j) = -d_i d_j
      for_each_mode(g, [&](const Mode& m) { dst[m.index] -= mult * m.d(i) * m.d(j) * src[m.index]; });
    }
  }
  return pressure_from_divergence(divdiv);
}

SpectralField recover_pressure(const SpectralField& u, double R) {
  SpectralField n = truncated_nonlinearity(u, R);
  return pressure_from_divergence(divergence(n));
}

double residual(const SpectralField& u, const SpectralField& p, const SpectralField& f, double alpha) {
  require_same_shape(u, f, "residual");
  require_vector(u.components(), "residual");
  if (!(p.grid() == u.grid())) throw PreconditionError("residual: grid mismatch");
  require_scalar(p.components(), "residual");
  SpectralField lhs = fractional_laplacian(u, alpha);
  lhs += advective_term_spectral(transform_inverse(u), u);
  lhs += gradient(p);
  lhs -= f;
  for (int c = 0; c < 3; ++c) lhs.zero_mode(c) = Complex{};
  return sobolev_norm(lhs, -0.5 * alpha);
}

double residual(const SpectralField& u, const SpectralField& p, const SpectralField& f,
                const SolverParams& params) {
  require_same_shape(u, f, "residual");
  if (!(p.grid() == u.grid())) throw PreconditionError("residual: grid mismatch");
  require_scalar(p.components(), "residual");
  SpectralField lhs = apply_symbol(u, params.epsilon, params.alpha, +1);
  SpectralField forcing_side = truncated_nonlinearity(u, params.R);
  forcing_side += gradient(p);
  forcing_side -= f;
  lhs += params.lambda * forcing_side;
  for (int c = 0; c < 3; ++c) lhs.zero_mode(c) = Complex{};
  return sobolev_norm(lhs, -0.5 * params.alpha);
}

EnergyReport energy_inequality_check(const SpectralField& u, const SpectralField& f,
                                     const SolverParams& p) {
  require_same_shape(u, f, "energy_inequality_check");
  EnergyReport r;
  r.h1 = sobolev_norm(u, 1.0);
  r.halpha = sobolev_norm(u, 0.5 * p.alpha);
  r.f_norm = sobolev_norm(f, -0.5 * p.alpha);
  r.energy = inequality(p.epsilon * r.h1 * r.h1 + r.halpha * r.halpha, p.lambda * r.halpha * r.f_norm);
  r.h1_bound = inequality(r.h1, r.f_norm / std::sqrt(2.0 * p.epsilon));
  r.uniform_bound = inequality(r.halpha, r.f_norm);
  return r;
}

EnergyReport energy_inequality_check(const Solution& sol, const SpectralField& f,
                                     const SolverParams& p) {
  return energy_inequality_check(sol.velocity, f, p);
}

NullIdentity null_identity(const SpectralField& u, double R) {
  require_vector(u.components(), "null_identity");
  const Grid& g = u.grid();
  NullIdentity out;
  const PhysicalField samples = transform_inverse(u);
  const double l3 = lebesgue_norm(samples, 3.0);
  out.scale = l3 * l3 * l3;

  // <u, D N> = <D u, N> for the dealiasing projector D, so the pairing with
  // the truncated nonlinearity is a grid sum against the raw product.
  PhysicalField product(g, 3);
  if (has_cutoff(R)) {
    const PhysicalField w = multiply(cutoff_field(g, R), samples);
    product = detail::advective_samples(w, transform_forward(w));
  } else {
    product = detail::advective_samples(samples, u);
  }
  const SpectralField ud = dealias(u);
  const bool band_limited = std::equal(ud.coeffs().begin(), ud.coeffs().end(), u.coeffs().begin());
  std::optional<PhysicalField> projected;
  if (!band_limited) projected = transform_inverse(ud);
  const PhysicalField& left = band_limited ? samples : *projected;
  double sum = 0.0;
  for (int c = 0; c < 3; ++c) {
    const auto a = left.component(c);
    const auto b = std::as_const(product).component(c);
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  }
  out.value = sum * g.cell_volume();
  return out;
}

std::string ledger_csv(const std::vector<LedgerEntry>& ledger) {
  std::ostringstream out;
  CsvWriter csv(out, {"iter", "H1", "Halpha2", "residual"});
  for (const auto& e : ledger) {
    csv.row({std::to_string(e.iter), format_double(e.h1), format_double(e.halpha),
             format_double(e.residual)});
  }
  return out.str();
}

}  // namespace fracns
