#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "avlc/vlc_codec.hpp"

namespace avlc {

/// Container for encoded lines:
///   "AVLC1" | u32 LE block count | per block:
///   u8 metadata (bit 0 dirty, bit 1 cost-fallback mode, others 0) |
///   u16 LE payload_bits | ceil(payload_bits/8) payload bytes
inline constexpr char kEncodedMagic[] = "AVLC1";

void write_encoded(std::ostream& out, std::span<const EncodedBlock> blocks);
void write_encoded(const std::filesystem::path& path, std::span<const EncodedBlock> blocks);

/// Throws DataError on a bad magic, reserved bits, truncated input or
/// inconsistent lengths.
std::vector<EncodedBlock> read_encoded(std::istream& in);
std::vector<EncodedBlock> read_encoded(const std::filesystem::path& path);

}  // namespace avlc
