#pragma once

#include <cstddef>
#include <numbers>

namespace fracns {

/// Uniform periodic box [0, L)^3 sampled with n points per dimension.
///
/// Sample (ix, iy, iz) sits at x = (ix, iy, iz) * L / n and is stored at
/// ix + n * (iy + n * iz). Lattice index m of array index i along any axis
/// is i for i <= n/2 and i - n otherwise, so the Nyquist index is +n/2 and
/// the zero wavenumber appears exactly once. Wavenumbers are k = 2 pi m / L.
class Grid {
 public:
  Grid(int n, double box_len);

  int n() const { return n_; }
  double box_len() const { return box_len_; }
  double spacing() const { return box_len_ / n_; }
  double cell_volume() const;
  double volume() const { return box_len_ * box_len_ * box_len_; }

  std::size_t points() const;
  /// Extent of the stored half spectrum along x (m_x = 0..n/2).
  int half_n() const { return n_ / 2 + 1; }
  std::size_t spectral_points() const;

  int lattice(int index) const { return index <= n_ / 2 ? index : index - n_; }
  double wavenumber(int m) const { return 2.0 * std::numbers::pi * m / box_len_; }
  double coordinate(int index) const { return index * spacing(); }
  double center() const { return 0.5 * box_len_; }

  bool is_nyquist(int m) const { return m == n_ / 2 || m == -n_ / 2; }
  /// 2/3-rule: keep only |m| <= n/3 along every axis.
  bool is_dealiased(int m) const { return 3 * (m < 0 ? -m : m) <= n_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int n_;
  double box_len_;
};

}  // namespace fracns
