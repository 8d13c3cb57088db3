#include "fracns/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracns/csv.hpp"
#include "fracns/cutoff.hpp"
#include "fracns/error.hpp"
#include "fracns/norms.hpp"
#include "fracns/solver.hpp"
#include "fracns/spectral.hpp"
#include "fracns/transform.hpp"

namespace fracns {

namespace {

double dot_sum(const PhysicalField& a, const PhysicalField& b) {
  double sum = 0.0;
  for (int c = 0; c < a.components(); ++c) {
    const auto x = a.component(c);
    const auto y = b.component(c);
    for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  }
  return sum * a.grid().cell_volume();
}

PhysicalField half_power(const PhysicalField& v, double alpha) {
  return transform_inverse(fractional_laplacian(transform_forward(v), 0.5 * alpha));
}

void check_pair(const PhysicalField& u, const PhysicalField& p, const char* where) {
  require_vector(u.components(), where);
  require_scalar(p.components(), where);
  if (!(u.grid() == p.grid())) throw PreconditionError(std::string(where) + ": grid mismatch");
}

void check_radius(const Grid& g, double R, const char* where) {
  if (!(R > 0.0 && R < g.center())) {
    throw PreconditionError(std::string(where) + ": R must lie in (0, box_len/2)");
  }
}

// Integrals over the annulus where grad theta is supported.
struct Fluxes {
  double kinetic = 0.0;   // int grad theta . |u|^2 u / 2
  double pressure = 0.0;  // int grad theta . p u
};

Fluxes annulus_fluxes(const PhysicalField& u, const PhysicalField& p, double R) {
  const Grid& g = u.grid();
  const int n = g.n();
  const double c = g.center();
  Fluxes out;
  for (int iz = 0; iz < n; ++iz) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        const double r = center_distance(g, ix, iy, iz);
        if (r <= 0.5 * R || r >= R) continue;
        const double radial = cutoff_profile_derivative(r, R) / r;
        const double x[3] = {g.coordinate(ix) - c, g.coordinate(iy) - c, g.coordinate(iz) - c};
        double u2 = 0.0, flux = 0.0;
        for (int k = 0; k < 3; ++k) {
          const double uk = u.at(k, ix, iy, iz);
          u2 += uk * uk;
          flux += radial * x[k] * uk;
        }
        out.kinetic += 0.5 * u2 * flux;
        out.pressure += p.at(0, ix, iy, iz) * flux;
      }
    }
  }
  out.kinetic *= g.cell_volume();
  out.pressure *= g.cell_volume();
  return out;
}

double ball_energy(const PhysicalField& lu, double radius) {
  const Grid& g = lu.grid();
  const int n = g.n();
  double sum = 0.0;
  for (int iz = 0; iz < n; ++iz) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        if (center_distance(g, ix, iy, iz) >= radius) continue;
        for (int k = 0; k < 3; ++k) {
          const double v = lu.at(k, ix, iy, iz);
          sum += v * v;
        }
      }
    }
  }
  return sum * g.cell_volume();
}

double commutator_term(const PhysicalField& lu, const PhysicalField& theta, const PhysicalField& u,
                       double alpha) {
  const PhysicalField l_theta_u = half_power(multiply(theta, u), alpha);
  PhysicalField bracket = multiply(theta, lu);
  bracket -= l_theta_u;
  return dot_sum(lu, bracket);
}

double abs_integral(const PhysicalField& a, const PhysicalField& b) {
  // int |a| |b| with pointwise magnitudes
  const Grid& g = a.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < g.points(); ++i) {
    double ma = 0.0, mb = 0.0;
    for (int c = 0; c < a.components(); ++c) ma += a.component(c)[i] * a.component(c)[i];
    for (int c = 0; c < b.components(); ++c) mb += b.component(c)[i] * b.component(c)[i];
    sum += std::sqrt(ma) * std::sqrt(mb);
  }
  return sum * g.cell_volume();
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

}  // namespace

double IdentityDefect::defect() const {
  const double diff = std::abs(lhs - rhs);
  return scale > 0.0 ? diff / scale : diff;
}

TruncatedTerms truncated_terms(const PhysicalField& u, const PhysicalField& p, double alpha, double R) {
  check_pair(u, p, "truncated_terms");
  check_radius(u.grid(), R, "truncated_terms");
  if (!(alpha > 0.0 && alpha < 2.0)) throw PreconditionError("truncated_terms: alpha must lie in (0, 2)");
  const PhysicalField lu = half_power(u, alpha);
  const PhysicalField theta = cutoff_field(u.grid(), R);
  const Fluxes fluxes = annulus_fluxes(u, p, R);
  TruncatedTerms t;
  t.R = R;
  t.I_a = commutator_term(lu, theta, u, alpha);
  t.I_b = fluxes.kinetic;
  t.I_c = fluxes.pressure;
  t.truncated_energy = ball_energy(lu, 0.5 * R);
  return t;
}

TruncatedTerms truncated_terms(const SpectralField& u, const SpectralField& p, double alpha, double R) {
  return truncated_terms(transform_inverse(u), transform_inverse(p), alpha, R);
}

IdentityReport integration_identities_check(const PhysicalField& u, const PhysicalField& p,
                                            double alpha, double R) {
  check_pair(u, p, "integration_identities_check");
  check_radius(u.grid(), R, "integration_identities_check");
  const Grid& g = u.grid();
  const SpectralField uh = transform_forward(u);
  const PhysicalField lu = half_power(u, alpha);
  const PhysicalField theta = cutoff_field(g, R);
  const PhysicalField theta_u = multiply(theta, u);
  const Fluxes fluxes = annulus_fluxes(u, p, R);
  const double grad_max = 2.0 / R * smooth_step_derivative(0.5);

  IdentityReport r;
  r.commutator.lhs = dot_sum(transform_inverse(fractional_laplacian(uh, alpha)), theta_u);
  r.commutator.rhs = dot_sum(multiply(theta, lu), lu) - commutator_term(lu, theta, u, alpha);
  r.commutator.scale = dot_sum(lu, lu);

  const double cubic = std::pow(lebesgue_norm(u, 3.0), 3.0);
  r.nonlinear.lhs = dot_sum(advective_term(u, u), theta_u);
  r.nonlinear.rhs = -fluxes.kinetic;
  r.nonlinear.scale = cubic * std::max(grad_max, 1.0);

  r.pressure.lhs = dot_sum(transform_inverse(gradient(transform_forward(p))), theta_u);
  r.pressure.rhs = -fluxes.pressure;
  r.pressure.scale = abs_integral(p, u) * std::max(grad_max, 1.0);

  r.null.lhs = spectral_inner(uh, truncated_nonlinearity(uh, R));
  r.null.rhs = 0.0;
  r.null.scale = cubic;
  return r;
}

IdentityDefect energy_identity_check(const PhysicalField& u, double alpha, double R) {
  require_vector(u.components(), "energy_identity_check");
  check_radius(u.grid(), R, "energy_identity_check");
  const SpectralField uh = transform_forward(u);
  const SpectralField ph = recover_pressure(uh);
  SpectralField f = fractional_laplacian(uh, alpha);
  f += advective_term_spectral(u, uh);
  f += gradient(ph);

  const PhysicalField p = transform_inverse(ph);
  const TruncatedTerms t = truncated_terms(u, p, alpha, R);
  const PhysicalField lu = half_power(u, alpha);
  const PhysicalField theta = cutoff_field(u.grid(), R);
  const PhysicalField theta_u = multiply(theta, u);

  IdentityDefect d;
  d.lhs = dot_sum(multiply(theta, lu), lu);
  d.rhs = t.I_a + t.I_b + t.I_c + dot_sum(transform_inverse(f), theta_u);
  d.scale = std::max({dot_sum(lu, lu), std::abs(d.lhs), std::abs(d.rhs)});
  return d;
}

RegimeFlags regime_flags(double alpha, double eps) {
  RegimeFlags f;
  f.condition_9 = alpha > 1.0 && alpha < 2.0 && 1.0 + eps / 3.0 <= alpha &&
                  alpha <= 5.0 / 3.0 + 2.0 * eps / 9.0;
  f.condition_10 = alpha > 0.6 && alpha < 1.0 && 1.0 - eps / 3.0 <= alpha &&
                   alpha <= 5.0 / 3.0 - 2.0 * eps / 9.0;
  if (alpha > 1.0 && alpha < 2.0 && !f.condition_9) {
    f.warnings.push_back("alpha in (1,2) but 1 + eps/3 <= alpha <= 5/3 + 2eps/9 fails");
  }
  if (alpha > 0.6 && alpha < 1.0 && !f.condition_10) {
    f.warnings.push_back("alpha in (3/5,1) but 1 - eps/3 <= alpha <= 5/3 - 2eps/9 fails");
  }
  if (alpha == 1.0) f.warnings.push_back("alpha = 1: I_b rate -1 assumes u in L^3");
  if (alpha <= 0.6) f.warnings.push_back("alpha <= 3/5: no predicted decay rates");
  return f;
}

DecayExponents predicted_exponents(double alpha, double eps, double nu) {
  DecayExponents e;
  if (alpha > 0.6) {
    e.I_a = (1.0 - nu) * (-0.5 * alpha + (6.0 * alpha - 3.0 * eps) / (12.0 - 2.0 * eps));
  }
  if (alpha == 1.0) {
    e.I_b = -1.0;
  } else if (alpha > 1.0 && alpha < 2.0) {
    e.I_b = -1.0 + 3.0 * (3.0 * alpha - 3.0 - eps) / (6.0 - eps);
  } else if (alpha > 0.6 && alpha < 1.0) {
    e.I_b = -1.0 + 3.0 * (3.0 * alpha - 3.0 + eps) / (6.0 + eps);
  }
  e.I_c = e.I_b;
  return e;
}

std::optional<double> fit_slope(const std::vector<double>& radii, const std::vector<double>& values) {
  if (radii.size() != values.size() || radii.empty()) return std::nullopt;
  const double r_max = *std::max_element(radii.begin(), radii.end());
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] < 0.1 * r_max || !(std::abs(values[i]) > 1e-14)) continue;
    xs.push_back(std::log(radii[i]));
    ys.push_back(std::log(std::abs(values[i])));
  }
  if (xs.size() < 2) return std::nullopt;
  const double k = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

LiouvilleReport decay_scan(const PhysicalField& u, const PhysicalField& p, double alpha,
                           double eps_param, const std::vector<double>& radii, double nu) {
  check_pair(u, p, "decay_scan");
  if (radii.empty()) throw PreconditionError("liouville.radii: must not be empty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    check_radius(u.grid(), radii[i], "liouville.radii");
    if (i && !(radii[i] > radii[i - 1])) throw PreconditionError("liouville.radii: must be increasing");
  }
  if (!(eps_param > 0.0 && eps_param < 2.0 * alpha)) {
    throw PreconditionError("liouville.eps: must lie in (0, 2 alpha)");
  }
  if (!(nu >= 0.0 && nu <= 1.0)) throw PreconditionError("liouville.nu: must lie in [0, 1]");

  LiouvilleReport rep;
  rep.alpha = alpha;
  rep.eps_param = eps_param;
  rep.nu = nu;
  rep.regime = regime_flags(alpha, eps_param);
  rep.predicted = predicted_exponents(alpha, eps_param, nu);
  const PhysicalField lu = half_power(u, alpha);
  rep.total_energy = dot_sum(lu, lu);

  std::vector<double> a, b, c, e;
  for (double R : radii) {
    rep.rows.push_back(truncated_terms(u, p, alpha, R));
    a.push_back(std::abs(rep.rows.back().I_a));
    b.push_back(std::abs(rep.rows.back().I_b));
    c.push_back(std::abs(rep.rows.back().I_c));
    e.push_back(rep.rows.back().truncated_energy);
  }
  rep.slopes.I_a = fit_slope(radii, a);
  rep.slopes.I_b = fit_slope(radii, b);
  rep.slopes.I_c = fit_slope(radii, c);
  const auto within = [](const std::optional<double>& s, const std::optional<double>& pr) -> std::optional<bool> {
    if (!s || !pr) return std::nullopt;
    return *s <= *pr + kSlopeSlack;
  };
  rep.within_a = within(rep.slopes.I_a, rep.predicted.I_a);
  rep.within_b = within(rep.slopes.I_b, rep.predicted.I_b);
  rep.within_c = within(rep.slopes.I_c, rep.predicted.I_c);
  rep.decreasing_a = strictly_decreasing(a);
  rep.decreasing_b = strictly_decreasing(b);
  rep.decreasing_c = strictly_decreasing(c);
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i && e[i] < e[i - 1]) rep.energy_monotone = false;
    if (e[i] > rep.total_energy * (1.0 + 1e-12)) rep.energy_bounded = false;
  }
  return rep;
}

std::string liouville_csv(const LiouvilleReport& report) {
  std::ostringstream out;
  CsvWriter csv(out, {"R", "I_a", "I_b", "I_c", "truncated_energy"});
  for (const auto& r : report.rows) {
    csv.row({format_double(r.R), format_double(r.I_a), format_double(r.I_b), format_double(r.I_c),
             format_double(r.truncated_energy)});
  }
  return out.str();
}

PhysicalField gaussian_curl_field(const Grid& grid, double sigma) {
  if (!(sigma > 0.0)) throw PreconditionError("gaussian_curl_field: sigma must be > 0");
  PhysicalField u(grid, 3);
  const int n = grid.n();
  const double c = grid.center();
  for (int iz = 0; iz < n; ++iz) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        const double x = grid.coordinate(ix) - c;
        const double y = grid.coordinate(iy) - c;
        const double z = grid.coordinate(iz) - c;
        const double G = std::exp(-(x * x + y * y + z * z) / (2.0 * sigma * sigma));
        const double a[3] = {y * y, z * z + x * y, x * x};
        const double curl_a[3] = {-2.0 * z, -2.0 * x, -y};
        // grad G = -x G / sigma^2
        const double g[3] = {-x / (sigma * sigma), -y / (sigma * sigma), -z / (sigma * sigma)};
        u.at(0, ix, iy, iz) = G * (curl_a[0] + g[1] * a[2] - g[2] * a[1]);
        u.at(1, ix, iy, iz) = G * (curl_a[1] + g[2] * a[0] - g[0] * a[2]);
        u.at(2, ix, iy, iz) = G * (curl_a[2] + g[0] * a[1] - g[1] * a[0]);
      }
    }
  }
  return u;
}

PressureBound pressure_integrability(const SpectralField& u, double q) {
  if (!(q > 2.0) || !std::isfinite(q)) throw PreconditionError("pressure_integrability: need 2 < q < inf");
  const SpectralField p = recover_pressure(u);
  PressureBound out;
  out.p_norm = lebesgue_norm(transform_inverse(p), 0.5 * q);
  const double uq = lebesgue_norm(transform_inverse(u), q);
  out.bound = uq * uq;
  return out;
}

}  // namespace fracns
