#pragma once

#include <filesystem>
#include <string>

#include "bosonstar/spectral_field.hpp"

namespace bosonstar {

// Flat binary container for a field:
//   u32 magic "BSF1" | u32 n | u32 representation tag (0 = position,
//   1 = momentum) | f64 L | 2*n^3 f64 interleaved re/im, row-major x-fastest.
void write_field(const SpectralField& field, Representation rep, const std::filesystem::path& path);
SpectralField read_field(const std::filesystem::path& path);

// In-memory serializations of the two exports (what the writers put on disk).
std::string field_to_bytes(const SpectralField& field, Representation rep);
std::string density_slice_csv(const SpectralField& field, int z_index);

// CSV export of a |phi|^2 slice at fixed z index: header "x,y,density".
void write_density_slice_csv(const SpectralField& field, int z_index, const std::filesystem::path& path);

// Shortest round-trippable decimal form (17 significant digits).
std::string format_g17(double v);

// Write via temp file in the same directory + rename, so readers never see
// partial content.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

// FNV-1a content fingerprint as fixed-width hex, for run manifests.
std::string fnv1a_hex(const std::string& content);

} // namespace bosonstar
