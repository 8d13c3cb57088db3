#include "fracns/grid.hpp"

#include <cmath>
#include <string>

#include "fracns/error.hpp"

namespace fracns {

Grid::Grid(int n, double box_len) : n_(n), box_len_(box_len) {
  if (n < 8 || (n & (n - 1)) != 0) {
    throw PreconditionError("grid: n must be a power of two >= 8, got " + std::to_string(n));
  }
  if (!(box_len > 0.0) || !std::isfinite(box_len)) {
    throw PreconditionError("grid: box_len must be positive and finite");
  }
}

double Grid::cell_volume() const {
  const double h = spacing();
  return h * h * h;
}

std::size_t Grid::points() const {
  const auto n = static_cast<std::size_t>(n_);
  return n * n * n;
}

std::size_t Grid::spectral_points() const {
  const auto n = static_cast<std::size_t>(n_);
  return static_cast<std::size_t>(half_n()) * n * n;
}

}  // namespace fracns
