#pragma once

#include <span>

#include "fracns/field.hpp"

namespace fracns {

/// Forward real-to-complex transform. Carries the 1/n^3 factor, so the
/// k = 0 coefficient is the mean of the samples. Rejects non-finite input.
SpectralField transform_forward(const PhysicalField& f);

/// Inverse transform; transform_inverse(transform_forward(f)) reproduces f.
PhysicalField transform_inverse(const SpectralField& v);

namespace detail {
// Single-component kernels used by the operator layer. The spans must come
// from AlignedVector storage of the matching grid.
void forward_component(const Grid& grid, std::span<const double> in, std::span<Complex> out);
void inverse_component(const Grid& grid, std::span<const Complex> in, std::span<double> out);
// Same, but overwrites `in`.
void inverse_component_destructive(const Grid& grid, std::span<Complex> in, std::span<double> out);
}  // namespace detail

}  // namespace fracns
