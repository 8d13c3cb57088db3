#include "fracns/forcing.hpp"

#include <cmath>

#include "fracns/error.hpp"
#include "fracns/norms.hpp"
#include "fracns/random.hpp"
#include "fracns/spectral.hpp"

namespace fracns {

ForcingKind parse_forcing_kind(const std::string& name) {
  if (name == "single_mode") return ForcingKind::single_mode;
  if (name == "taylor_green_like") return ForcingKind::taylor_green_like;
  if (name == "random_band") return ForcingKind::random_band;
  throw PreconditionError("forcing.kind: unknown construction '" + name +
                          "' (expected single_mode, taylor_green_like or random_band)");
}

std::string to_string(ForcingKind kind) {
  switch (kind) {
    case ForcingKind::single_mode: return "single_mode";
    case ForcingKind::taylor_green_like: return "taylor_green_like";
    case ForcingKind::random_band: return "random_band";
  }
  return "unknown";
}

SpectralField make_forcing(const Grid& grid, const ForcingSpec& spec, double alpha) {
  if (!std::isfinite(spec.amplitude)) throw PreconditionError("forcing.amplitude must be finite");
  SpectralField f(grid, 3);
  const Complex i{0.0, 1.0};
  switch (spec.kind) {
    case ForcingKind::single_mode: {
      const int m = static_cast<int>(std::lround(spec.band_lo));
      if (m < 1 || 3 * m > grid.n() || std::abs(spec.band_lo - m) > 1e-12) {
        throw PreconditionError("forcing.band_lo: single_mode needs an integer index in [1, n/3]");
      }
      // sin(k y) = (e^{iky} - e^{-iky}) / 2i
      f.set_mode(0, 0, m, 0, -0.5 * i * spec.amplitude);
      break;
    }
    case ForcingKind::taylor_green_like: {
      // sin x = sum_s s e^{isx} / 2i, cos y = sum_s e^{isy} / 2. Only m_x = +1
      // is set; the m_x = -1 half follows by conjugation.
      for (int sy : {-1, 1}) {
        for (int sz : {-1, 1}) {
          f.set_mode(0, 1, sy, sz, -i * (1.0 / 8.0) * spec.amplitude);
          f.set_mode(1, 1, sy, sz, i * (sy / 8.0) * spec.amplitude);
        }
      }
      break;
    }
    case ForcingKind::random_band: {
      if (!(spec.band_lo >= 1.0)) throw PreconditionError("forcing.band_lo must be >= 1");
      Rng rng(spec.seed);
      f = random_band_field(grid, 3, spec.band_lo, spec.band_hi, rng, true);
      f *= spec.amplitude;
      break;
    }
  }
  if (spec.norm_target > 0.0) {
    const double current = sobolev_norm(f, -0.5 * alpha);
    if (current == 0.0) throw PreconditionError("forcing.norm_target: cannot rescale a zero field");
    f *= spec.norm_target / current;
  }
  validate_forcing(f);
  return f;
}

void validate_forcing(const SpectralField& f) {
  require_vector(f.components(), "forcing");
  if (!is_mean_free(f, 1e-13)) throw PreconditionError("forcing: field must be mean-free");
  const double scale = f.max_abs_coefficient() * f.grid().wavenumber(f.grid().n() / 2);
  const double div = divergence(f).max_abs_coefficient();
  if (div > 1e-10 * scale) throw PreconditionError("forcing: field must be divergence-free");
}

}  // namespace fracns
