#pragma once

#include "fracns/field.hpp"

namespace fracns {

/// Smooth step S(t) = g(t) / (g(t) + g(1 - t)), g(t) = exp(-1/t) for t > 0
/// and 0 otherwise. S = 0 for t <= 0 and S = 1 for t >= 1.
double smooth_step(double t);
double smooth_step_derivative(double t);

/// Radial cutoff theta_R(r) = S(2 (1 - r/R)): 1 for r <= R/2, 0 for r >= R.
double cutoff_profile(double r, double R);
/// d theta_R / dr.
double cutoff_profile_derivative(double r, double R);

/// theta_R sampled on the grid, radius measured from the box center.
/// Requires 0 < R < box_len / 2.
PhysicalField cutoff_field(const Grid& grid, double R);
/// Analytic gradient of theta_R on the grid (3-vector); vanishes outside the
/// annulus R/2 < r < R.
PhysicalField cutoff_gradient(const Grid& grid, double R);

/// Distance from the box center of sample (ix, iy, iz).
double center_distance(const Grid& grid, int ix, int iy, int iz);

}  // namespace fracns
