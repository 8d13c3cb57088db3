#include <doctest.h>

#include <cstring>
#include <filesystem>

#include "fracns/error.hpp"
#include "fracns/random.hpp"
#include "fracns/snapshot.hpp"
#include "fracns/transform.hpp"
#include "support.hpp"

using namespace fracns;
using namespace testing_support;

namespace {

double read_f64(const std::vector<std::uint8_t>& b, std::size_t off) {
  double v;
  std::memcpy(&v, b.data() + off, 8);
  return v;
}

std::uint32_t read_u32(const std::vector<std::uint8_t>& b, std::size_t off) {
  std::uint32_t v;
  std::memcpy(&v, b.data() + off, 4);
  return v;
}

}  // namespace

TEST_CASE("header layout") {
  const Grid g(8, 2.5);
  PhysicalField f(g, 3);
  f.at(2, 1, 0, 0) = 7.0;
  const auto bytes = encode_snapshot(f);
  REQUIRE(bytes.size() == 24 + 3 * 512 * 8);
  CHECK(std::memcmp(bytes.data(), "FNS1", 4) == 0);
  CHECK(read_u32(bytes, 4) == 8);
  CHECK(read_f64(bytes, 8) == 2.5);
  CHECK(read_u32(bytes, 16) == 3);
  CHECK(read_u32(bytes, 20) == 0);
  CHECK(read_f64(bytes, 24 + 8 * (2 * 512 + 1)) == 7.0);
}

TEST_CASE("spectral payload is the full lattice, x fastest") {
  const Grid g(8, 1.0);
  SpectralField s(g, 1);
  s.set_mode(0, 1, 0, 0, Complex(0.25, -0.5));
  const auto bytes = encode_snapshot(s);
  REQUIRE(bytes.size() == 24 + 512 * 16);
  CHECK(read_u32(bytes, 20) == 1);
  CHECK(read_f64(bytes, 24 + 16 * 1) == 0.25);
  CHECK(read_f64(bytes, 24 + 16 * 1 + 8) == -0.5);
  CHECK(read_f64(bytes, 24 + 16 * 7) == 0.25);  // m = -1
  CHECK(read_f64(bytes, 24 + 16 * 7 + 8) == 0.5);
}

TEST_CASE("round trips are bit exact") {
  const Grid g(16, 3.0);
  Rng rng(1);
  const auto s = random_band_field(g, 3, 1.0, 5.0, rng, true);
  const auto back = std::get<SpectralField>(decode_snapshot(encode_snapshot(s)));
  CHECK(max_abs_diff(back, s) == 0.0);
  const auto p = transform_inverse(s);
  const auto pback = std::get<PhysicalField>(decode_snapshot(encode_snapshot(p)));
  CHECK(max_abs_diff(pback, p) == 0.0);

  const auto path = std::filesystem::temp_directory_path() / "fracns_snapshot_test.fns";
  write_snapshot(path, s);
  CHECK(max_abs_diff(read_spectral(path), s) == 0.0);
  CHECK(max_abs_diff(read_physical(path), p) < 1e-14);
  std::filesystem::remove(path);
}

TEST_CASE("malformed input is rejected") {
  const Grid g(8, 1.0);
  auto bytes = encode_snapshot(PhysicalField(g, 1));
  auto bad = bytes;
  bad[0] = 'X';
  CHECK_THROWS_AS(decode_snapshot(bad), FormatError);
  auto short_payload = bytes;
  short_payload.pop_back();
  CHECK_THROWS_AS(decode_snapshot(short_payload), FormatError);
  auto comps = bytes;
  comps[16] = 2;
  CHECK_THROWS_AS(decode_snapshot(comps), FormatError);

  SpectralField s(g, 1);
  s.set_mode(0, 1, 0, 0, Complex(1.0, 0.0));
  auto spec = encode_snapshot(s);
  const double broken = 5.0;
  std::memcpy(spec.data() + 24 + 16 * 7, &broken, 8);  // m = -1 no longer conjugate
  CHECK_THROWS_AS(decode_snapshot(spec), FormatError);
  CHECK_THROWS_AS(read_snapshot("/nonexistent/dir/x.fns"), FormatError);
}
