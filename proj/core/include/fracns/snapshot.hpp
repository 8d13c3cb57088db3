#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "fracns/field.hpp"

namespace fracns {

/// Binary field snapshot ("FNS1").
///
/// Header (little-endian, 24 bytes): magic "FNS1", u32 n, f64 box_len,
/// u32 components, u32 space_flag (0 = physical, 1 = spectral). The payload is
/// component-major with x fastest: f64 samples for physical fields, or
/// interleaved re/im f64 pairs over the full n^3 wavenumber lattice (array
/// index i holds lattice m = i <= n/2 ? i : i - n) for spectral fields.
using Snapshot = std::variant<PhysicalField, SpectralField>;

std::vector<std::uint8_t> encode_snapshot(const PhysicalField& field);
std::vector<std::uint8_t> encode_snapshot(const SpectralField& field);
/// Throws FormatError on a bad magic, truncated payload, or a spectral
/// payload that is not Hermitian.
Snapshot decode_snapshot(const std::vector<std::uint8_t>& bytes);

void write_snapshot(const std::filesystem::path& path, const PhysicalField& field);
void write_snapshot(const std::filesystem::path& path, const SpectralField& field);
Snapshot read_snapshot(const std::filesystem::path& path);

/// Reads a snapshot and returns it in spectral form, transforming if needed.
SpectralField read_spectral(const std::filesystem::path& path);
/// Reads a snapshot and returns it in physical form, transforming if needed.
PhysicalField read_physical(const std::filesystem::path& path);

}  // namespace fracns
