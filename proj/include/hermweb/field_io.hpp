#pragma once

#include <filesystem>
#include <vector>

#include "hermweb/grid.hpp"

namespace hermweb {

/// Binary field dump: a 32-byte little-endian header
///
///   bytes 0-3    magic "HWFD"
///   bytes 4-5    u16 format version (1)
///   bytes 6-7    u16 n
///   bytes 8-31   6 x u32 points per real axis (x1, y1, x2, y2, x3, y3; 0 if unused)
///
/// followed by one or more fields back to back, each as (re, im) IEEE-754
/// double pairs in grid storage order. The field count is implied by the
/// file length.
void write_fields(const std::filesystem::path& path, const std::vector<ScalarField>& fields);
std::vector<ScalarField> read_fields(const std::filesystem::path& path);

inline constexpr std::uint16_t kFieldDumpVersion = 1;

}  // namespace hermweb
