#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "fracns/error.hpp"
#include "fracns/norms.hpp"
#include "fracns/random.hpp"
#include "fracns/spectral.hpp"
#include "fracns/transform.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace fracns;
using namespace testing_support;


TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(Grid(6, 1.0), PreconditionError);
  CHECK_THROWS_AS(Grid(12, 1.0), PreconditionError);
  CHECK_THROWS_AS(Grid(8, 0.0), PreconditionError);
  const Grid g(16, 2.0);
  int zeros = 0;
  for (int i = 0; i < 16; ++i) zeros += g.lattice(i) == 0;
  CHECK(zeros == 1);
  CHECK(g.lattice(8) == 8);
  CHECK(g.lattice(9) == -7);
}

TEST_CASE("forward transform of a constant puts the mean at k = 0") {
  const Grid g(8, 3.0);
  const auto f = sample_scalar(g, [](double, double, double) { return 2.5; });
  const auto s = transform_forward(f);
  CHECK(std::abs(s.mode(0, 0, 0, 0) - Complex(2.5, 0.0)) < 1e-15);
  CHECK(std::abs(s.component(0)[0]) == doctest::Approx(2.5));
  double rest = 0.0;
  for (std::size_t i = 1; i < s.component(0).size(); ++i) rest = std::max(rest, std::abs(s.component(0)[i]));
  CHECK(rest < 1e-15);
}

TEST_CASE("cosine along x has coefficients 1/2 at m = (+-1, 0, 0)") {
  const Grid g(16, 5.0);
  const auto f = sample_scalar(g, [&](double x, double, double) { return std::cos(2 * kPi * x / 5.0); });
  const auto s = transform_forward(f);
  CHECK(std::abs(s.mode(0, 1, 0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(s.mode(0, -1, 0, 0) - 0.5) < 1e-15);
  double rest = 0.0;
  for (int mz = -7; mz <= 8; ++mz)
    for (int my = -7; my <= 8; ++my)
      for (int mx = -7; mx <= 8; ++mx)
        if (!(std::abs(mx) == 1 && my == 0 && mz == 0)) rest = std::max(rest, std::abs(s.mode(0, mx, my, mz)));
  CHECK(rest < 1e-15);
}

TEST_CASE("round trip reproduces random samples") {
  const Grid g(32, 1.0);
  Rng rng(7);
  PhysicalField f(g, 3);
  for (auto& v : f.values()) v = uniform01(rng) - 0.5;
  const auto back = transform_inverse(transform_forward(f));
  CHECK(max_abs_diff(back, f) / max_abs(f) < 1e-12);
}

TEST_CASE("non-finite samples are rejected with the component named") {
  const Grid g(8, 1.0);
  PhysicalField f(g, 3);
  f.at(1, 2, 3, 4) = std::numeric_limits<double>::quiet_NaN();
  try {
    (void)transform_forward(f);
    FAIL("expected rejection");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("component 1") != std::string::npos);
  }
}

TEST_CASE("fractional laplacian on a single mode") {
  const double L = 3.0;
  const Grid g(16, L);
  SpectralField v(g, 1);
  v.set_mode(0, 0, 1, 0, Complex(0.3, -0.7));
  for (double alpha : {0.5, 1.0, 1.5, 1.8}) {
    const auto out = fractional_laplacian(v, alpha);
    const Complex expected = std::pow(2 * kPi / L, alpha) * Complex(0.3, -0.7);
    CHECK(std::abs(out.mode(0, 0, 1, 0) - expected) <= 1e-12 * std::abs(expected));
    CHECK(std::abs(out.mode(0, 0, -1, 0) - std::conj(expected)) <= 1e-12 * std::abs(expected));
  }
  CHECK(max_abs_diff(fractional_laplacian(v, 0.0), v) == 0.0);
}

TEST_CASE("fractional laplacian is a semigroup on mean-free fields") {
  const Grid g(16, 2.0);
  Rng rng(11);
  const auto v = random_band_field(g, 3, 1.0, 5.0, rng);
  for (auto [a, b] : {std::pair{0.7, 0.4}, std::pair{-0.6, 1.3}, std::pair{-0.5, -0.25}}) {
    const auto twice = fractional_laplacian(fractional_laplacian(v, a), b);
    const auto once = fractional_laplacian(v, a + b);
    CHECK(max_abs_diff(twice, once) <= 1e-12 * once.max_abs_coefficient());
  }
}

TEST_CASE("negative order needs a mean-free field") {
  const Grid g(8, 1.0);
  SpectralField v(g, 1);
  v.zero_mode(0) = 1.0;
  v.set_mode(0, 1, 0, 0, 0.5);
  CHECK_THROWS_AS(fractional_laplacian(v, -0.5), PreconditionError);
  CHECK_NOTHROW(fractional_laplacian(v, 0.5));
  CHECK(fractional_laplacian(v, 0.5).zero_mode(0) == Complex{});
}

TEST_CASE("leray projector") {
  const Grid g(16, 2 * kPi);
  Rng rng(3);
  SUBCASE("annihilates gradients") {
    const auto phi = random_band_field(g, 1, 1.0, 5.0, rng);
    const auto out = leray_project(gradient(phi));
    CHECK(out.max_abs_coefficient() < 1e-14 * gradient(phi).max_abs_coefficient());
  }
  SUBCASE("fixes a solenoidal single mode") {
    SpectralField v(g, 3);
    v.set_mode(0, 0, 2, 1, Complex(1.0, 0.5));
    v.set_mode(2, 3, 0, 0, Complex(-0.2, 0.1));
    CHECK(max_abs_diff(leray_project(v), v) == 0.0);
  }
  SUBCASE("idempotent, self-adjoint, exactly solenoidal") {
    const auto v = random_band_field(g, 3, 0.0, 5.0, rng);
    const auto w = random_band_field(g, 3, 0.0, 5.0, rng);
    const auto pv = leray_project(v);
    CHECK(max_abs_diff(leray_project(pv), pv) <= 1e-13 * pv.max_abs_coefficient());
    const double a = spectral_inner(pv, w);
    const double b = spectral_inner(v, leray_project(w));
    CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
    CHECK(divergence(pv).max_abs_coefficient() < 1e-13);
    CHECK(pv.hermitian_defect() == 0.0);
  }
  SUBCASE("zero mode passes through, scalar input rejected") {
    SpectralField v(g, 3);
    v.zero_mode(1) = 4.0;
    CHECK(leray_project(v).zero_mode(1) == Complex(4.0));
    CHECK_THROWS_AS(leray_project(SpectralField(g, 1)), PreconditionError);
  }
}

TEST_CASE("regularized inverse") {
  const double L = 2.0;
  const Grid g(16, L);
  SpectralField v(g, 3);
  v.set_mode(1, 2, -1, 0, Complex(0.4, 0.9));
  const double k2 = std::pow(2 * kPi / L, 2) * 5;
  for (double alpha : {0.8, 1.5, 2.0}) {
    const double eps = 0.1;
    const auto out = regularized_inverse(v, eps, alpha);
    const Complex expected = Complex(0.4, 0.9) / (eps * k2 + std::pow(k2, alpha / 2));
    CHECK(std::abs(out.mode(1, 2, -1, 0) - expected) <= 1e-12 * std::abs(expected));
  }
  SUBCASE("alpha = 2 is a scaled inverse laplacian") {
    const auto out = regularized_inverse(v, 0.25, 2.0);
    const auto lap_inv = fractional_laplacian(v, -2.0);
    CHECK(max_abs_diff(out, (1.0 / 1.25) * lap_inv) <= 1e-12 * out.max_abs_coefficient());
  }
  SUBCASE("multiplying back gives the identity") {
    Rng rng(5);
    const auto w = random_band_field(g, 3, 1.0, 5.0, rng);
    const double eps = 0.05, alpha = 1.3;
    const auto inv = regularized_inverse(w, eps, alpha);
    auto back = eps * fractional_laplacian(inv, 2.0);
    back += fractional_laplacian(inv, alpha);
    CHECK(max_abs_diff(back, w) <= 1e-12 * w.max_abs_coefficient());
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(regularized_inverse(v, 0.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(regularized_inverse(v, -1.0, 1.0), PreconditionError);
    SpectralField m = v;
    m.zero_mode(0) = 1.0;
    CHECK_THROWS_AS(regularized_inverse(m, 0.1, 1.0), PreconditionError);
  }
}

TEST_CASE("gradient and divergence") {
  const double L = 3.0;
  const Grid g(16, L);
  const double k = 2 * kPi / L;
  const auto phi = sample_scalar(g, [&](double x, double, double) { return std::sin(k * x); });
  const auto grad = transform_inverse(gradient(transform_forward(phi)));
  const auto expected = sample_scalar(g, [&](double x, double, double) { return k * std::cos(k * x); });
  double err = 0.0;
  for (std::size_t i = 0; i < g.points(); ++i) err = std::max(err, std::abs(grad.component(0)[i] - expected.component(0)[i]));
  CHECK(err < 1e-13);
  CHECK(max_abs(grad) >= k * 0.99);

  Rng rng(9);
  const auto s = random_band_field(g, 1, 1.0, 5.0, rng);
  const auto lap = divergence(gradient(s));
  const auto ref = -1.0 * fractional_laplacian(s, 2.0);
  CHECK(max_abs_diff(lap, ref) <= 1e-13 * ref.max_abs_coefficient());
}

TEST_CASE("dealiasing keeps only |m_j| <= n/3") {
  const Grid g(16, 1.0);
  SpectralField v(g, 1);
  v.set_mode(0, 5, 0, 0, 1.0);
  v.set_mode(0, 6, 0, 0, 1.0);
  v.set_mode(0, 0, -6, 5, 1.0);
  const auto d = dealias(v);
  CHECK(d.mode(0, 5, 0, 0) == Complex(1.0));
  CHECK(d.mode(0, 6, 0, 0) == Complex{});
  CHECK(d.mode(0, 0, -6, 5) == Complex{});
}

TEST_CASE("advective term with constant transport velocity") {
  const double L = 2.0;
  const Grid g(16, L);
  const double k = 2 * kPi / L;
  const auto b = sample_vector(g, [](double, double, double) { return std::array{0.7, 0.0, 0.0}; });
  const auto v = sample_vector(g, [&](double x, double, double) {
    return std::array{std::sin(2 * k * x), std::cos(k * x), 0.0};
  });
  const auto out = advective_term(b, v);
  const auto expected = sample_vector(g, [&](double x, double, double) {
    return std::array{0.7 * 2 * k * std::cos(2 * k * x), -0.7 * k * std::sin(k * x), 0.0};
  });
  CHECK(max_abs_diff(out, expected) < 1e-13);
}

TEST_CASE("advective term matches the brute-force convolution at n = 8") {
  const Grid g(8, 1.7);
  const int n = g.n();
  Rng rng(2024);
  PhysicalField b(g, 3), v(g, 3);
  for (auto& x : b.values()) x = uniform01(rng) - 0.5;
  for (auto& x : v.values()) x = uniform01(rng) - 0.5;

  const auto out = advective_term_spectral(b, transform_forward(v));
  const auto oracle = convolution_advective(b, v);
  double worst = 0.0, scale = 0.0;
  for (int kz = 0; kz < n; ++kz)
    for (int ky = 0; ky < n; ++ky)
      for (int kx = 0; kx < n; ++kx)
        for (int c = 0; c < 3; ++c) {
          const auto want = oracle[c][kx + n * (ky + n * kz)];
          const auto got = out.mode(c, g.lattice(kx), g.lattice(ky), g.lattice(kz));
          worst = std::max(worst, std::abs(got - want));
          scale = std::max(scale, std::abs(want));
        }
  CHECK(scale > 0.0);
  CHECK(worst <= 1e-10 * scale);
}

TEST_CASE("skew symmetry of the advective term for solenoidal fields") {
  const Grid g(32, 2 * kPi);
  Rng rng(77);
  const auto vh = random_band_field(g, 3, 1.0, 4.0, rng, true);
  const auto v = transform_inverse(vh);
  const auto adv = advective_term(v, v);
  double pairing = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < g.points(); ++i) pairing += v.component(c)[i] * adv.component(c)[i];
  pairing *= g.cell_volume();
  const double scale = std::pow(lebesgue_norm(v, 3.0), 3.0);
  CHECK(std::abs(pairing) <= 1e-11 * scale);
}

TEST_CASE("Parseval and Hermitian symmetry") {
  const Grid g(16, 1.3);
  Rng rng(13);
  PhysicalField f(g, 3);
  for (auto& x : f.values()) x = uniform01(rng) - 0.5;
  const auto s = transform_forward(f);
  CHECK(s.hermitian_defect() < 1e-15);
  const double phys = lebesgue_norm(f, 2.0);
  const double spec = sobolev_norm(s, 0.0);
  CHECK(std::abs(phys - spec) <= 1e-11 * phys);
  CHECK(fractional_laplacian(s, 0.7).hermitian_defect() < 1e-15);
  CHECK(leray_project(s).hermitian_defect() < 1e-15);
}

TEST_CASE("set_mode keeps conjugate pairs on the self-conjugate planes") {
  const Grid g(8, 1.0);
  SpectralField v(g, 1);
  v.set_mode(0, 0, 2, -1, Complex(1.0, 2.0));
  CHECK(v.mode(0, 0, -2, 1) == Complex(1.0, -2.0));
  v.set_mode(0, 0, 4, 0, Complex(3.0, 1.0));
  CHECK(v.mode(0, 0, 4, 0).imag() == 0.0);
  CHECK(v.hermitian_defect() == 0.0);
  v.set_mode(0, -3, 1, 1, Complex(0.0, 1.0));
  CHECK(v.mode(0, 3, -1, -1) == Complex(0.0, -1.0));
}
