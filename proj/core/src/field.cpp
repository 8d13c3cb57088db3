#include "fracns/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracns/error.hpp"

namespace fracns {

namespace {

void check_components(int components) {
  if (components != 1 && components != 3) {
    throw PreconditionError("field: components must be 1 or 3, got " +
                            std::to_string(components));
  }
}

int wrap(int m, int n) { return ((m % n) + n) % n; }

}  // namespace

void require_vector(int components, const char* where) {
  if (components != 3) {
    throw PreconditionError(std::string(where) + ": expected a 3-vector field");
  }
}

void require_scalar(int components, const char* where) {
  if (components != 1) {
    throw PreconditionError(std::string(where) + ": expected a scalar field");
  }
}

void require_same_shape(const PhysicalField& a, const PhysicalField& b, const char* where) {
  if (!(a.grid() == b.grid())) throw PreconditionError(std::string(where) + ": grid mismatch");
  if (a.components() != b.components()) {
    throw PreconditionError(std::string(where) + ": component count mismatch");
  }
}

void require_same_shape(const SpectralField& a, const SpectralField& b, const char* where) {
  if (!(a.grid() == b.grid())) throw PreconditionError(std::string(where) + ": grid mismatch");
  if (a.components() != b.components()) {
    throw PreconditionError(std::string(where) + ": component count mismatch");
  }
}

// ---------------------------------------------------------------------------

PhysicalField::PhysicalField(const Grid& grid, int components)
    : grid_(grid), components_(components) {
  check_components(components);
  values_.assign(grid.points() * static_cast<std::size_t>(components), 0.0);
}

std::span<double> PhysicalField::component(int c) {
  const std::size_t n3 = grid_.points();
  return std::span<double>(values_).subspan(static_cast<std::size_t>(c) * n3, n3);
}

std::span<const double> PhysicalField::component(int c) const {
  const std::size_t n3 = grid_.points();
  return std::span<const double>(values_).subspan(static_cast<std::size_t>(c) * n3, n3);
}

double& PhysicalField::at(int c, int ix, int iy, int iz) {
  const auto n = static_cast<std::size_t>(grid_.n());
  return component(c)[static_cast<std::size_t>(ix) + n * (static_cast<std::size_t>(iy) + n * iz)];
}

double PhysicalField::at(int c, int ix, int iy, int iz) const {
  const auto n = static_cast<std::size_t>(grid_.n());
  return component(c)[static_cast<std::size_t>(ix) + n * (static_cast<std::size_t>(iy) + n * iz)];
}

int PhysicalField::first_nonfinite_component() const {
  for (int c = 0; c < components_; ++c) {
    const auto comp = component(c);
    if (!std::all_of(comp.begin(), comp.end(), [](double v) { return std::isfinite(v); })) {
      return c;
    }
  }
  return -1;
}

PhysicalField& PhysicalField::operator+=(const PhysicalField& other) {
  require_same_shape(*this, other, "PhysicalField::operator+=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

PhysicalField& PhysicalField::operator-=(const PhysicalField& other) {
  require_same_shape(*this, other, "PhysicalField::operator-=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

PhysicalField& PhysicalField::operator*=(double scale) {
  for (auto& v : values_) v *= scale;
  return *this;
}

// ---------------------------------------------------------------------------

SpectralField::SpectralField(const Grid& grid, int components)
    : grid_(grid), components_(components) {
  check_components(components);
  coeffs_.assign(grid.spectral_points() * static_cast<std::size_t>(components), Complex{});
}

std::span<Complex> SpectralField::component(int c) {
  const std::size_t m = grid_.spectral_points();
  return std::span<Complex>(coeffs_).subspan(static_cast<std::size_t>(c) * m, m);
}

std::span<const Complex> SpectralField::component(int c) const {
  const std::size_t m = grid_.spectral_points();
  return std::span<const Complex>(coeffs_).subspan(static_cast<std::size_t>(c) * m, m);
}

std::size_t SpectralField::storage_index(int ix, int iy, int iz) const {
  const auto n = static_cast<std::size_t>(grid_.n());
  const auto h = static_cast<std::size_t>(grid_.half_n());
  return static_cast<std::size_t>(ix) + h * (static_cast<std::size_t>(iy) + n * iz);
}

Complex SpectralField::mode(int c, int mx, int my, int mz) const {
  const int n = grid_.n();
  int ix = wrap(mx, n);
  if (ix <= n / 2) return component(c)[storage_index(ix, wrap(my, n), wrap(mz, n))];
  return std::conj(component(c)[storage_index(wrap(-mx, n), wrap(-my, n), wrap(-mz, n))]);
}

void SpectralField::set_mode(int c, int mx, int my, int mz, Complex value) {
  const int n = grid_.n();
  int ix = wrap(mx, n);
  int iy = wrap(my, n);
  int iz = wrap(mz, n);
  if (ix > n / 2) {
    ix = wrap(-mx, n);
    iy = wrap(-my, n);
    iz = wrap(-mz, n);
    value = std::conj(value);
  }
  auto comp = component(c);
  comp[storage_index(ix, iy, iz)] = value;
  if (ix == 0 || ix == n / 2) {
    const int jy = wrap(-iy, n);
    const int jz = wrap(-iz, n);
    if (jy == iy && jz == iz) {
      comp[storage_index(ix, iy, iz)] = Complex(value.real(), 0.0);
    } else {
      comp[storage_index(ix, jy, jz)] = std::conj(value);
    }
  }
}

double SpectralField::max_abs_coefficient() const {
  double best = 0.0;
  for (const auto& c : coeffs_) best = std::max(best, std::abs(c));
  return best;
}

double SpectralField::max_abs_zero_mode() const {
  double best = 0.0;
  for (int c = 0; c < components_; ++c) best = std::max(best, std::abs(zero_mode(c)));
  return best;
}

double SpectralField::hermitian_defect() const {
  const int n = grid_.n();
  double worst = 0.0;
  for (int c = 0; c < components_; ++c) {
    const auto comp = component(c);
    for (int ix : {0, n / 2}) {
      for (int iz = 0; iz < n; ++iz) {
        for (int iy = 0; iy < n; ++iy) {
          const Complex a = comp[storage_index(ix, iy, iz)];
          const Complex b = comp[storage_index(ix, wrap(-iy, n), wrap(-iz, n))];
          worst = std::max(worst, std::abs(a - std::conj(b)));
        }
      }
    }
  }
  return worst;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_shape(*this, other, "SpectralField::operator+=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_shape(*this, other, "SpectralField::operator-=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

PhysicalField operator+(PhysicalField lhs, const PhysicalField& rhs) { return lhs += rhs; }
PhysicalField operator-(PhysicalField lhs, const PhysicalField& rhs) { return lhs -= rhs; }
PhysicalField operator*(double scale, PhysicalField field) { return field *= scale; }
SpectralField operator+(SpectralField lhs, const SpectralField& rhs) { return lhs += rhs; }
SpectralField operator-(SpectralField lhs, const SpectralField& rhs) { return lhs -= rhs; }
SpectralField operator*(double scale, SpectralField field) { return field *= scale; }

}  // namespace fracns
