#include <doctest.h>

#include <cmath>

#include "fracns/cutoff.hpp"
#include "fracns/error.hpp"
#include "support.hpp"

using namespace fracns;
using namespace testing_support;

TEST_CASE("plateaus") {
  const double R = 2.0;
  CHECK(cutoff_profile(0.0, R) == 1.0);
  CHECK(cutoff_profile(0.5 * R, R) == 1.0);
  CHECK(cutoff_profile(R, R) == 0.0);
  CHECK(cutoff_profile(3.0 * R, R) == 0.0);
  CHECK(cutoff_profile(0.75 * R, R) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("smooth step closed form") {
  for (double t : {0.1, 0.3, 0.5, 0.77, 0.95}) {
    const double g1 = std::exp(-1.0 / t), g2 = std::exp(-1.0 / (1.0 - t));
    CHECK(smooth_step(t) == doctest::Approx(g1 / (g1 + g2)).epsilon(1e-14));
    const double h = 1e-6;
    const double fd = (smooth_step(t + h) - smooth_step(t - h)) / (2 * h);
    CHECK(smooth_step_derivative(t) == doctest::Approx(fd).epsilon(1e-7));
  }
  CHECK(smooth_step_derivative(1e-300) == 0.0);
}

TEST_CASE("monotone on 1000 radii") {
  const double R = 1.3;
  double prev = 2.0;
  for (int i = 0; i <= 1000; ++i) {
    const double r = 1.2 * R * i / 1000.0;
    const double v = cutoff_profile(r, R);
    CHECK(v <= prev);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    CHECK(cutoff_profile_derivative(r, R) <= 0.0);
    prev = v;
  }
}

TEST_CASE("sampled field") {
  const Grid g(32, 8.0);
  const double R = 3.0;
  const auto theta = cutoff_field(g, R);
  CHECK(theta.at(0, 16, 16, 16) == 1.0);
  // (16 + 12, 16, 16) sits exactly at r = R
  CHECK(theta.at(0, 28, 16, 16) == 0.0);
  CHECK(theta.at(0, 0, 0, 0) == 0.0);
  const auto grad = cutoff_gradient(g, R);
  // gradient points inward along the x axis
  CHECK(grad.at(0, 24, 16, 16) < 0.0);
  CHECK(grad.at(1, 24, 16, 16) == 0.0);
  CHECK_THROWS_AS(cutoff_field(g, 4.0), PreconditionError);
  CHECK_THROWS_AS(cutoff_field(g, 0.0), PreconditionError);
}
