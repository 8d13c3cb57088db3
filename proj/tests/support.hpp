#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include "fracns/field.hpp"

namespace testing_support {

using fracns::Grid;
using fracns::PhysicalField;

constexpr double kPi = std::numbers::pi;

// Samples a scalar function of the physical coordinates.
inline PhysicalField sample_scalar(const Grid& g, const std::function<double(double, double, double)>& fn) {
  PhysicalField out(g, 1);
  const int n = g.n();
  for (int iz = 0; iz < n; ++iz)
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix)
        out.at(0, ix, iy, iz) = fn(g.coordinate(ix), g.coordinate(iy), g.coordinate(iz));
  return out;
}

inline PhysicalField sample_vector(const Grid& g,
                                   const std::function<std::array<double, 3>(double, double, double)>& fn) {
  PhysicalField out(g, 3);
  const int n = g.n();
  for (int iz = 0; iz < n; ++iz)
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        const auto v = fn(g.coordinate(ix), g.coordinate(iy), g.coordinate(iz));
        for (int c = 0; c < 3; ++c) out.at(c, ix, iy, iz) = v[c];
      }
  return out;
}

inline double max_abs_diff(const PhysicalField& a, const PhysicalField& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    worst = std::max(worst, std::abs(a.values()[i] - b.values()[i]));
  return worst;
}

inline double max_abs(const PhysicalField& a) {
  double worst = 0.0;
  for (double v : a.values()) worst = std::max(worst, std::abs(v));
  return worst;
}

inline double max_abs_diff(const fracns::SpectralField& a, const fracns::SpectralField& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    worst = std::max(worst, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  return worst;
}

// Scalar field with real coefficients |m|^{-(beta + 2)/2} on every mode up to
// |m| = n/2, so shell energies scale like kappa^{-beta}.
inline fracns::SpectralField power_law_field(const Grid& g, double beta) {
  fracns::SpectralField out(g, 1);
  const int n = g.n(), h = g.half_n();
  for (int iz = 0; iz < n; ++iz)
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < h; ++ix) {
        const int my = g.lattice(iy), mz = g.lattice(iz);
        const double m = std::sqrt(double(ix * ix + my * my + mz * mz));
        if (m == 0.0 || m > 0.5 * n) continue;
        out.component(0)[ix + std::size_t(h) * (iy + std::size_t(n) * iz)] = std::pow(m, -0.5 * (beta + 2.0));
      }
  return out;
}

}  // namespace testing_support
