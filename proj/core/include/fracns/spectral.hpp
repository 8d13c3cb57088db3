#pragma once

#include "fracns/field.hpp"

namespace fracns {

/// (-Delta)^{s/2}: multiplies the coefficient at k by |k|^s. The zero mode
/// is cleared for s > 0, kept for s == 0, and must already vanish for s < 0.
SpectralField fractional_laplacian(const SpectralField& v, double s);

/// Leray projector P = I - k k^T / |k|^2 on a 3-vector field. Uses the
/// differentiation wavevector, so divergence(leray_project(v)) is exactly 0.
/// The zero mode passes through unchanged.
SpectralField leray_project(const SpectralField& v);

/// Inverse of -eps*Delta + (-Delta)^{alpha/2}: divides by eps|k|^2 + |k|^alpha.
/// Requires eps > 0, 0 < alpha <= 2 and a mean-free input.
SpectralField regularized_inverse(const SpectralField& v, double epsilon, double alpha);

/// Spectral gradient of a scalar field (multiplier i k_j, Nyquist zeroed).
SpectralField gradient(const SpectralField& scalar);
/// Spectral divergence of a vector field.
SpectralField divergence(const SpectralField& vec);
/// Single partial derivative d/dx_axis of every component.
SpectralField partial_derivative(const SpectralField& v, int axis);

/// 2/3-rule truncation: zeroes every mode with some |m_j| > n/3.
SpectralField dealias(SpectralField v);

/// Pointwise product of two scalar sample arrays followed by dealiasing.
SpectralField dealiased_product(const PhysicalField& a, int a_component,
                                const PhysicalField& b, int b_component);

/// (b . grad) v computed pseudo-spectrally: v is differentiated spectrally,
/// multiplied by b on the grid, and the product is dealiased.
PhysicalField advective_term(const PhysicalField& b, const PhysicalField& v);
/// Same operator with v already in spectral form; returns the dealiased
/// coefficients of the product.
SpectralField advective_term_spectral(const PhysicalField& b, const SpectralField& v);

/// Whether |c(0)| <= rel_tol * max |c| for every component.
bool is_mean_free(const SpectralField& v, double rel_tol = 1e-13);

/// Pointwise product of a scalar weight with every component of a field.
PhysicalField multiply(const PhysicalField& weight, const PhysicalField& field);

}  // namespace fracns
