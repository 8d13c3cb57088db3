#pragma once

#include <cstdint>
#include <string>

#include "fracns/field.hpp"

namespace fracns {

enum class ForcingKind { single_mode, taylor_green_like, random_band };

ForcingKind parse_forcing_kind(const std::string& name);
std::string to_string(ForcingKind kind);

struct ForcingSpec {
  ForcingKind kind = ForcingKind::single_mode;
  double amplitude = 1.0;
  /// single_mode uses band_lo as its lattice index; random_band fills
  /// band_lo <= |m| <= band_hi.
  double band_lo = 1.0;
  double band_hi = 2.0;
  std::uint64_t seed = 0;
  /// When > 0 the field is rescaled so ||f||_{H^{-alpha/2}} equals this.
  double norm_target = 0.0;
};

/// Builds a divergence-free, mean-free forcing:
///   single_mode        a (sin(k y), 0, 0), k = 2 pi band_lo / L
///   taylor_green_like  a (sin x cos y cos z, -cos x sin y cos z, 0), unit wavenumber 2 pi / L
///   random_band        Leray-projected random coefficients in the band
SpectralField make_forcing(const Grid& grid, const ForcingSpec& spec, double alpha);

/// Throws PreconditionError unless f is a 3-vector that is mean-free and
/// divergence-free to 1e-10 relative.
void validate_forcing(const SpectralField& f);

}  // namespace fracns
