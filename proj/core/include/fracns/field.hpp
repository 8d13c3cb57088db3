#pragma once

#include <complex>
#include <cstddef>
#include <new>
#include <span>
#include <vector>

#include "fracns/grid.hpp"

namespace fracns {

/// 64-byte aligned storage so every field buffer satisfies the alignment the
/// FFT plans were created with.
template <class T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t kAlignment{64};

  AlignedAllocator() noexcept = default;
  template <class U>
  AlignedAllocator(const AlignedAllocator<U>&) noexcept {}

  T* allocate(std::size_t count) {
    return static_cast<T*>(::operator new(count * sizeof(T), kAlignment));
  }
  void deallocate(T* ptr, std::size_t) noexcept { ::operator delete(ptr, kAlignment); }

  template <class U>
  bool operator==(const AlignedAllocator<U>&) const noexcept { return true; }
};

template <class T>
using AlignedVector = std::vector<T, AlignedAllocator<T>>;

using Complex = std::complex<double>;

/// Real samples of a scalar (1 component) or vector (3 components) field on
/// the grid, stored component-major, x-fastest.
class PhysicalField {
 public:
  PhysicalField(const Grid& grid, int components);

  const Grid& grid() const { return grid_; }
  int components() const { return components_; }
  bool is_vector() const { return components_ == 3; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::span<double> component(int c);
  std::span<const double> component(int c) const;

  double& at(int c, int ix, int iy, int iz);
  double at(int c, int ix, int iy, int iz) const;

  /// Index of the first non-finite component, or -1 when all samples are finite.
  int first_nonfinite_component() const;

  PhysicalField& operator+=(const PhysicalField& other);
  PhysicalField& operator-=(const PhysicalField& other);
  PhysicalField& operator*=(double scale);

 private:
  Grid grid_;
  int components_;
  AlignedVector<double> values_;
};

/// Fourier coefficients of a real field. Only the half lattice m_x = 0..n/2
/// is stored (index ix + (n/2+1) * (iy + n * iz)); the remaining coefficients
/// follow from Hermitian symmetry c(-m) = conj(c(m)).
class SpectralField {
 public:
  SpectralField(const Grid& grid, int components);

  const Grid& grid() const { return grid_; }
  int components() const { return components_; }
  bool is_vector() const { return components_ == 3; }

  std::span<Complex> coeffs() { return coeffs_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> component(int c);
  std::span<const Complex> component(int c) const;

  /// Coefficient at lattice point m (any of the n^3 lattice points; values
  /// with m_x < 0 are reconstructed by conjugation).
  Complex mode(int c, int mx, int my, int mz) const;
  /// Sets the coefficient at m and, where the conjugate partner is stored
  /// too, keeps the pair Hermitian.
  void set_mode(int c, int mx, int my, int mz, Complex value);

  Complex& zero_mode(int c) { return component(c)[0]; }
  Complex zero_mode(int c) const { return component(c)[0]; }

  double max_abs_coefficient() const;
  double max_abs_zero_mode() const;
  /// Largest |c(-m) - conj(c(m))| over the self-conjugate planes m_x = 0, n/2.
  double hermitian_defect() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double scale);

 private:
  std::size_t storage_index(int ix, int iy, int iz) const;

  Grid grid_;
  int components_;
  AlignedVector<Complex> coeffs_;
};

PhysicalField operator+(PhysicalField lhs, const PhysicalField& rhs);
PhysicalField operator-(PhysicalField lhs, const PhysicalField& rhs);
PhysicalField operator*(double scale, PhysicalField field);
SpectralField operator+(SpectralField lhs, const SpectralField& rhs);
SpectralField operator-(SpectralField lhs, const SpectralField& rhs);
SpectralField operator*(double scale, SpectralField field);

/// Throws PreconditionError unless both fields share grid and component count.
void require_same_shape(const PhysicalField& a, const PhysicalField& b, const char* where);
void require_same_shape(const SpectralField& a, const SpectralField& b, const char* where);
void require_vector(int components, const char* where);
void require_scalar(int components, const char* where);

}  // namespace fracns
