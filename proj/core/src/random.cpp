#include "fracns/random.hpp"

#include <cmath>
#include <numbers>

#include "fracns/error.hpp"
#include "fracns/spectral.hpp"

namespace fracns {

std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SpectralField random_band_field(const Grid& grid, int components, double band_lo,
                                double band_hi, Rng& rng, bool solenoidal) {
  if (!(band_lo >= 0.0 && band_hi >= band_lo)) {
    throw PreconditionError("random_band_field: need 0 <= band_lo <= band_hi");
  }
  if (band_hi * 3.0 > grid.n()) {
    throw PreconditionError("random_band_field: band exceeds the dealiased range n/3");
  }
  if (solenoidal) require_vector(components, "random_band_field");

  SpectralField out(grid, components);
  const int top = static_cast<int>(std::floor(band_hi));
  // Visit the lattice in a fixed order and draw for both members of a
  // conjugate pair once; set_mode keeps the stored half consistent.
  for (int mz = -top; mz <= top; ++mz) {
    for (int my = -top; my <= top; ++my) {
      for (int mx = 0; mx <= top; ++mx) {
        if (mx == 0 && (my < 0 || (my == 0 && mz < 0))) continue;
        const double m = std::sqrt(double(mx * mx + my * my + mz * mz));
        if (m < band_lo || m > band_hi || m == 0.0) continue;
        for (int c = 0; c < components; ++c) {
          const double radius = std::sqrt(uniform01(rng));
          const double phase = 2.0 * std::numbers::pi * uniform01(rng);
          out.set_mode(c, mx, my, mz, std::polar(radius, phase));
        }
      }
    }
  }
  return solenoidal ? leray_project(out) : out;
}

}  // namespace fracns
