#include "fracns/spectral.hpp"

#include <cmath>
#include <string>

#include "fracns/error.hpp"
#include "fracns/transform.hpp"
#include "lattice.hpp"

namespace fracns {

using detail::for_each_mode;
using detail::Mode;

namespace {

const Complex kI{0.0, 1.0};

template <class Multiplier>
SpectralField apply_real_multiplier(const SpectralField& v, Multiplier&& multiplier) {
  SpectralField out(v.grid(), v.components());
  for_each_mode(v.grid(), [&](const Mode& m) {
    const double factor = multiplier(m);
    for (int c = 0; c < v.components(); ++c) {
      out.component(c)[m.index] = factor * v.component(c)[m.index];
    }
  });
  return out;
}

void require_mean_free(const SpectralField& v, const char* where) {
  if (!is_mean_free(v)) {
    throw PreconditionError(std::string(where) +
                            ": input has a nonzero mean; the multiplier is singular at k = 0");
  }
}

}  // namespace

bool is_mean_free(const SpectralField& v, double rel_tol) {
  const double scale = v.max_abs_coefficient();
  return v.max_abs_zero_mode() <= rel_tol * scale;
}

SpectralField fractional_laplacian(const SpectralField& v, double s) {
  if (!std::isfinite(s)) throw PreconditionError("fractional_laplacian: exponent must be finite");
  if (s == 0.0) return v;
  if (s < 0.0) require_mean_free(v, "fractional_laplacian");
  return apply_real_multiplier(v, [s](const Mode& m) {
    return m.is_zero() ? 0.0 : std::pow(m.k2(), 0.5 * s);
  });
}

SpectralField leray_project(const SpectralField& v) {
  require_vector(v.components(), "leray_project");
  SpectralField out = v;
  auto x = out.component(0);
  auto y = out.component(1);
  auto z = out.component(2);
  for_each_mode(v.grid(), [&](const Mode& m) {
    const double d2 = m.d2();
    if (d2 == 0.0) return;
    const std::size_t i = m.index;
    const Complex kv = (m.dx * x[i] + m.dy * y[i] + m.dz * z[i]) / d2;
    x[i] -= m.dx * kv;
    y[i] -= m.dy * kv;
    z[i] -= m.dz * kv;
  });
  return out;
}

SpectralField regularized_inverse(const SpectralField& v, double epsilon, double alpha) {
  if (!(epsilon > 0.0)) throw PreconditionError("regularized_inverse: epsilon must be > 0");
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw PreconditionError("regularized_inverse: alpha must lie in (0, 2]");
  }
  require_mean_free(v, "regularized_inverse");
  return apply_real_multiplier(v, [=](const Mode& m) {
    if (m.is_zero()) return 0.0;
    const double k2 = m.k2();
    return 1.0 / (epsilon * k2 + std::pow(k2, 0.5 * alpha));
  });
}

SpectralField gradient(const SpectralField& scalar) {
  require_scalar(scalar.components(), "gradient");
  SpectralField out(scalar.grid(), 3);
  const auto src = scalar.component(0);
  for_each_mode(scalar.grid(), [&](const Mode& m) {
    for (int axis = 0; axis < 3; ++axis) out.component(axis)[m.index] = kI * m.d(axis) * src[m.index];
  });
  return out;
}

SpectralField divergence(const SpectralField& vec) {
  require_vector(vec.components(), "divergence");
  SpectralField out(vec.grid(), 1);
  auto dst = out.component(0);
  for_each_mode(vec.grid(), [&](const Mode& m) {
    const std::size_t i = m.index;
    dst[i] = kI * (m.dx * vec.component(0)[i] + m.dy * vec.component(1)[i] +
                   m.dz * vec.component(2)[i]);
  });
  return out;
}

SpectralField partial_derivative(const SpectralField& v, int axis) {
  if (axis < 0 || axis > 2) throw PreconditionError("partial_derivative: axis must be 0, 1 or 2");
  SpectralField out(v.grid(), v.components());
  for_each_mode(v.grid(), [&](const Mode& m) {
    const Complex factor = kI * m.d(axis);
    for (int c = 0; c < v.components(); ++c) out.component(c)[m.index] = factor * v.component(c)[m.index];
  });
  return out;
}

SpectralField dealias(SpectralField v) {
  const Grid& g = v.grid();
  for_each_mode(g, [&](const Mode& m) {
    if (g.is_dealiased(m.mx) && g.is_dealiased(m.my) && g.is_dealiased(m.mz)) return;
    for (int c = 0; c < v.components(); ++c) v.component(c)[m.index] = Complex{};
  });
  return v;
}

SpectralField dealiased_product(const PhysicalField& a, int a_component, const PhysicalField& b,
                                int b_component) {
  if (!(a.grid() == b.grid())) throw PreconditionError("dealiased_product: grid mismatch");
  PhysicalField prod(a.grid(), 1);
  auto dst = prod.component(0);
  const auto x = a.component(a_component);
  const auto y = b.component(b_component);
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = x[i] * y[i];
  return dealias(transform_forward(prod));
}

PhysicalField detail::advective_samples(const PhysicalField& b, const SpectralField& v) {
  require_vector(b.components(), "advective_term");
  require_vector(v.components(), "advective_term");
  if (!(b.grid() == v.grid())) throw PreconditionError("advective_term: grid mismatch");
  const Grid& g = b.grid();

  PhysicalField product(g, 3);
  PhysicalField derivative(g, 1);
  SpectralField scratch(g, 1);
  for (int axis = 0; axis < 3; ++axis) {
    const auto weight = b.component(axis);
    for (int c = 0; c < 3; ++c) {
      const auto src = v.component(c);
      auto dst = scratch.component(0);
      for_each_mode(g, [&](const Mode& m) {
        const double d = m.d(axis);
        const Complex z = src[m.index];
        dst[m.index] = Complex(-d * z.imag(), d * z.real());
      });
      detail::inverse_component_destructive(g, dst, derivative.component(0));
      auto acc = product.component(c);
      const auto dv = derivative.component(0);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += weight[i] * dv[i];
    }
  }
  return product;
}

SpectralField advective_term_spectral(const PhysicalField& b, const SpectralField& v) {
  return dealias(transform_forward(detail::advective_samples(b, v)));
}

PhysicalField advective_term(const PhysicalField& b, const PhysicalField& v) {
  require_same_shape(b, v, "advective_term");
  return transform_inverse(advective_term_spectral(b, transform_forward(v)));
}

PhysicalField multiply(const PhysicalField& weight, const PhysicalField& field) {
  require_scalar(weight.components(), "multiply");
  if (!(weight.grid() == field.grid())) throw PreconditionError("multiply: grid mismatch");
  PhysicalField out = field;
  const auto w = weight.component(0);
  for (int c = 0; c < field.components(); ++c) {
    auto dst = out.component(c);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] *= w[i];
  }
  return out;
}

}  // namespace fracns
