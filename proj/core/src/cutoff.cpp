#include "fracns/cutoff.hpp"

#include <cmath>

#include "fracns/error.hpp"

namespace fracns {

namespace {

void check_radius(const Grid& grid, double R) {
  if (!(R > 0.0 && R < grid.center())) {
    throw PreconditionError("cutoff: R must lie in (0, box_len/2)");
  }
}

}  // namespace

// Written as 1 / (1 + exp(1/t - 1/(1-t))) so neither g underflows first.
double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return 1.0 / (1.0 + std::exp(1.0 / t - 1.0 / (1.0 - t)));
}

double smooth_step_derivative(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double s = smooth_step(t);
  const double core = s * (1.0 - s);
  if (core == 0.0) return 0.0;
  return core * (1.0 / (t * t) + 1.0 / ((1.0 - t) * (1.0 - t)));
}

double cutoff_profile(double r, double R) { return smooth_step(2.0 * (1.0 - r / R)); }

double cutoff_profile_derivative(double r, double R) {
  return -2.0 / R * smooth_step_derivative(2.0 * (1.0 - r / R));
}

double center_distance(const Grid& grid, int ix, int iy, int iz) {
  const double c = grid.center();
  const double x = grid.coordinate(ix) - c;
  const double y = grid.coordinate(iy) - c;
  const double z = grid.coordinate(iz) - c;
  return std::sqrt(x * x + y * y + z * z);
}

PhysicalField cutoff_field(const Grid& grid, double R) {
  check_radius(grid, R);
  PhysicalField theta(grid, 1);
  const int n = grid.n();
  for (int iz = 0; iz < n; ++iz) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        theta.at(0, ix, iy, iz) = cutoff_profile(center_distance(grid, ix, iy, iz), R);
      }
    }
  }
  return theta;
}

PhysicalField cutoff_gradient(const Grid& grid, double R) {
  check_radius(grid, R);
  PhysicalField grad(grid, 3);
  const int n = grid.n();
  const double c = grid.center();
  for (int iz = 0; iz < n; ++iz) {
    for (int iy = 0; iy < n; ++iy) {
      for (int ix = 0; ix < n; ++ix) {
        const double r = center_distance(grid, ix, iy, iz);
        if (r <= 0.5 * R || r >= R) continue;
        const double radial = cutoff_profile_derivative(r, R) / r;
        grad.at(0, ix, iy, iz) = radial * (grid.coordinate(ix) - c);
        grad.at(1, ix, iy, iz) = radial * (grid.coordinate(iy) - c);
        grad.at(2, ix, iy, iz) = radial * (grid.coordinate(iz) - c);
      }
    }
  }
  return grad;
}

}  // namespace fracns
