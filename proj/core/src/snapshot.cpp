#include "fracns/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "fracns/error.hpp"
#include "fracns/transform.hpp"

namespace fracns {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

namespace {

constexpr char kMagic[4] = {'F', 'N', 'S', '1'};
constexpr std::size_t kHeaderSize = 24;

template <class T>
void put(std::vector<std::uint8_t>& out, T value) {
  auto raw = std::bit_cast<std::array<std::uint8_t, sizeof(T)>>(value);
  if constexpr (std::endian::native == std::endian::big) std::reverse(raw.begin(), raw.end());
  out.insert(out.end(), raw.begin(), raw.end());
}

template <class T>
T get(const std::vector<std::uint8_t>& in, std::size_t& offset) {
  if (offset + sizeof(T) > in.size()) throw FormatError("snapshot: truncated data");
  std::array<std::uint8_t, sizeof(T)> raw{};
  std::memcpy(raw.data(), in.data() + offset, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(raw.begin(), raw.end());
  offset += sizeof(T);
  return std::bit_cast<T>(raw);
}

void put_header(std::vector<std::uint8_t>& out, const Grid& g, int components, std::uint32_t space) {
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.n()));
  put<double>(out, g.box_len());
  put<std::uint32_t>(out, static_cast<std::uint32_t>(components));
  put<std::uint32_t>(out, space);
}

}  // namespace

std::vector<std::uint8_t> encode_snapshot(const PhysicalField& field) {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + field.values().size() * sizeof(double));
  put_header(out, field.grid(), field.components(), 0);
  for (double v : field.values()) put<double>(out, v);
  return out;
}

std::vector<std::uint8_t> encode_snapshot(const SpectralField& field) {
  const Grid& g = field.grid();
  const int n = g.n();
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + 2 * g.points() * field.components() * sizeof(double));
  put_header(out, g, field.components(), 1);
  for (int c = 0; c < field.components(); ++c) {
    for (int iz = 0; iz < n; ++iz) {
      for (int iy = 0; iy < n; ++iy) {
        for (int ix = 0; ix < n; ++ix) {
          const Complex v = field.mode(c, g.lattice(ix), g.lattice(iy), g.lattice(iz));
          put<double>(out, v.real());
          put<double>(out, v.imag());
        }
      }
    }
  }
  return out;
}

Snapshot decode_snapshot(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw FormatError("snapshot: missing FNS1 magic");
  }
  std::size_t offset = 4;
  const auto n = get<std::uint32_t>(bytes, offset);
  const auto box_len = get<double>(bytes, offset);
  const auto components = get<std::uint32_t>(bytes, offset);
  const auto space = get<std::uint32_t>(bytes, offset);
  if (components != 1 && components != 3) throw FormatError("snapshot: components must be 1 or 3");
  if (space > 1) throw FormatError("snapshot: space_flag must be 0 or 1");
  if (n > 4096) throw FormatError("snapshot: unreasonable resolution");

  const Grid grid(static_cast<int>(n), box_len);
  const std::size_t values = grid.points() * components * (space == 0 ? 1 : 2);
  if (bytes.size() != kHeaderSize + values * sizeof(double)) {
    throw FormatError("snapshot: payload size does not match header");
  }

  if (space == 0) {
    PhysicalField field(grid, static_cast<int>(components));
    for (auto& v : field.values()) v = get<double>(bytes, offset);
    return field;
  }

  const int nn = grid.n();
  SpectralField field(grid, static_cast<int>(components));
  double scale = 0.0;
  std::vector<Complex> full(grid.points());
  for (std::uint32_t c = 0; c < components; ++c) {
    for (auto& v : full) {
      const double re = get<double>(bytes, offset);
      const double im = get<double>(bytes, offset);
      v = Complex(re, im);
      scale = std::max(scale, std::abs(v));
    }
    auto dst = field.component(static_cast<int>(c));
    const auto at = [&](int ix, int iy, int iz) {
      return full[static_cast<std::size_t>(ix) + static_cast<std::size_t>(nn) * (iy + static_cast<std::size_t>(nn) * iz)];
    };
    double defect = 0.0;
    for (int iz = 0; iz < nn; ++iz) {
      for (int iy = 0; iy < nn; ++iy) {
        for (int ix = 0; ix < nn; ++ix) {
          const Complex v = at(ix, iy, iz);
          const Complex partner = at((nn - ix) % nn, (nn - iy) % nn, (nn - iz) % nn);
          defect = std::max(defect, std::abs(v - std::conj(partner)));
          if (ix < grid.half_n()) {
            dst[static_cast<std::size_t>(ix) + static_cast<std::size_t>(grid.half_n()) * (iy + static_cast<std::size_t>(nn) * iz)] = v;
          }
        }
      }
    }
    if (defect > 1e-12 * std::max(scale, 1e-300)) {
      throw FormatError("snapshot: spectral payload is not Hermitian (component " +
                        std::to_string(c) + ")");
    }
  }
  return field;
}

void write_snapshot(const std::filesystem::path& path, const PhysicalField& field) {
  const auto bytes = encode_snapshot(field);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("snapshot: cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("snapshot: write failed for " + path.string());
}

void write_snapshot(const std::filesystem::path& path, const SpectralField& field) {
  const auto bytes = encode_snapshot(field);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("snapshot: cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("snapshot: write failed for " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("snapshot: cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_snapshot(bytes);
}

SpectralField read_spectral(const std::filesystem::path& path) {
  auto snap = read_snapshot(path);
  if (auto* s = std::get_if<SpectralField>(&snap)) return std::move(*s);
  return transform_forward(std::get<PhysicalField>(snap));
}

PhysicalField read_physical(const std::filesystem::path& path) {
  auto snap = read_snapshot(path);
  if (auto* p = std::get_if<PhysicalField>(&snap)) return std::move(*p);
  return transform_inverse(std::get<SpectralField>(snap));
}

}  // namespace fracns
