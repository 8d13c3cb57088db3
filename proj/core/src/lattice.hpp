#pragma once

#include <cmath>
#include <cstddef>

#include "fracns/field.hpp"
#include "fracns/grid.hpp"

namespace fracns::detail {

/// One stored coefficient of the half spectrum.
struct Mode {
  std::size_t index;
  int mx, my, mz;
  double kx, ky, kz;
  /// Differentiation wavevector: k with Nyquist components zeroed.
  double dx, dy, dz;

  double k2() const { return kx * kx + ky * ky + kz * kz; }
  double kabs() const { return std::sqrt(k2()); }
  double d2() const { return dx * dx + dy * dy + dz * dz; }
  bool is_zero() const { return mx == 0 && my == 0 && mz == 0; }
  /// Multiplicity of this stored coefficient in the full lattice.
  double weight(int n) const { return (mx == 0 || mx == n / 2) ? 1.0 : 2.0; }
  double d(int axis) const { return axis == 0 ? dx : (axis == 1 ? dy : dz); }
};

template <class Visitor>
void for_each_mode(const Grid& grid, Visitor&& visit) {
  const int n = grid.n();
  const int h = grid.half_n();
  std::size_t index = 0;
  for (int iz = 0; iz < n; ++iz) {
    const int mz = grid.lattice(iz);
    const double kz = grid.wavenumber(mz);
    const double dz = grid.is_nyquist(mz) ? 0.0 : kz;
    for (int iy = 0; iy < n; ++iy) {
      const int my = grid.lattice(iy);
      const double ky = grid.wavenumber(my);
      const double dy = grid.is_nyquist(my) ? 0.0 : ky;
      for (int ix = 0; ix < h; ++ix, ++index) {
        const double kx = grid.wavenumber(ix);
        const double dx = grid.is_nyquist(ix) ? 0.0 : kx;
        visit(Mode{index, ix, my, mz, kx, ky, kz, dx, dy, dz});
      }
    }
  }
}

// Grid samples of (b . grad) v before dealiasing; v is differentiated
// spectrally. Defined in spectral.cpp.
PhysicalField advective_samples(const PhysicalField& b, const SpectralField& v);

}  // namespace fracns::detail
