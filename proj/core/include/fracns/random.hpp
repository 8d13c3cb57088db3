#pragma once

#include <cstdint>
#include <random>

#include "fracns/field.hpp"

namespace fracns {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits; independent of the
/// standard library's distribution implementations, so streams are
/// reproducible across toolchains.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Seed for trial `index` of a batch, decorrelated with a splitmix64 step.
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index);

/// Random real field whose coefficients are uniform in the unit disc on the
/// shell band_lo <= |m| <= band_hi and zero elsewhere (mean-free when
/// band_lo > 0). With `solenoidal` the vector field is Leray projected.
SpectralField random_band_field(const Grid& grid, int components, double band_lo,
                                double band_hi, Rng& rng, bool solenoidal = false);

}  // namespace fracns
