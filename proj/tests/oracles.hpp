#pragma once

#include <array>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "fracns/field.hpp"

namespace testing_support {

// Direct O(n^6) DFT with the library's normalisation, full lattice, x fastest.
inline std::vector<std::complex<double>> direct_dft(const fracns::Grid& g, std::span<const double> samples) {
  const int n = g.n();
  std::vector<std::complex<double>> out(g.points());
  for (int kz = 0; kz < n; ++kz)
    for (int ky = 0; ky < n; ++ky)
      for (int kx = 0; kx < n; ++kx) {
        std::complex<double> acc{};
        for (int z = 0; z < n; ++z)
          for (int y = 0; y < n; ++y)
            for (int x = 0; x < n; ++x) {
              const double phase = -2.0 * std::numbers::pi * (double(kx * x + ky * y + kz * z)) / n;
              acc += samples[x + n * (y + n * z)] * std::polar(1.0, phase);
            }
        out[kx + n * (ky + n * kz)] = acc / double(n * n * n);
      }
  return out;
}

// Coefficients of (b . grad) v by explicit convolution of the DFTs, with the
// 2/3 rule applied to the output and derivatives zeroed at Nyquist.
// Result is indexed [component][kx + n (ky + n kz)].
inline std::array<std::vector<std::complex<double>>, 3> convolution_advective(const fracns::PhysicalField& b,
                                                                              const fracns::PhysicalField& v) {
  const auto& g = b.grid();
  const int n = g.n();
  std::array<std::vector<std::complex<double>>, 3> bh, vh, out;
  for (int c = 0; c < 3; ++c) {
    bh[c] = direct_dft(g, b.component(c));
    vh[c] = direct_dft(g, v.component(c));
    out[c].assign(g.points(), {});
  }
  const auto wrap = [n](int m) { return ((m % n) + n) % n; };
  const auto diff_wavenumber = [&](int idx) {
    const int m = g.lattice(idx);
    return g.is_nyquist(m) ? 0.0 : g.wavenumber(m);
  };
  for (int kz = 0; kz < n; ++kz)
    for (int ky = 0; ky < n; ++ky)
      for (int kx = 0; kx < n; ++kx) {
        if (!(g.is_dealiased(g.lattice(kx)) && g.is_dealiased(g.lattice(ky)) && g.is_dealiased(g.lattice(kz))))
          continue;
        for (int c = 0; c < 3; ++c) {
          std::complex<double> acc{};
          for (int qz = 0; qz < n; ++qz)
            for (int qy = 0; qy < n; ++qy)
              for (int qx = 0; qx < n; ++qx) {
                const int pidx = wrap(kx - qx) + n * (wrap(ky - qy) + n * wrap(kz - qz));
                const int qidx = qx + n * (qy + n * qz);
                const double q[3] = {diff_wavenumber(qx), diff_wavenumber(qy), diff_wavenumber(qz)};
                for (int j = 0; j < 3; ++j) acc += bh[j][pidx] * std::complex<double>(0.0, q[j]) * vh[c][qidx];
              }
          out[c][kx + n * (ky + n * kz)] = acc;
        }
      }
  return out;
}

}  // namespace testing_support
