#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

#include "avlc/cost_model.hpp"

namespace avlc {

/// One 512-bit memory line. Data word i (k bits wide) is bits [k*i, k*i+k)
/// of the payload read MSB-first, so the high nibble of byte 0 is nibble 0.
struct Block {
  static constexpr std::size_t kBytes = 64;
  static constexpr std::size_t kBits = kBytes * 8;
  static constexpr std::size_t kNibbles = kBits / 4;

  std::array<std::uint8_t, kBytes> bytes{};

  std::uint8_t nibble(std::size_t i) const {
    std::uint8_t b = bytes[i >> 1];
    return (i & 1) ? (b & 0x0F) : (b >> 4);
  }
  void set_nibble(std::size_t i, std::uint8_t v) {
    std::uint8_t& b = bytes[i >> 1];
    b = (i & 1) ? static_cast<std::uint8_t>((b & 0xF0) | (v & 0x0F))
                : static_cast<std::uint8_t>((b & 0x0F) | (v << 4));
  }
  /// k-bit data word i; k must divide 8.
  unsigned symbol(std::size_t i, unsigned k) const {
    const std::size_t bit = i * k;
    return (bytes[bit >> 3] >> (8 - k - (bit & 7))) & ((1u << k) - 1);
  }
  void set_symbol(std::size_t i, unsigned k, unsigned v) {
    const std::size_t bit = i * k;
    const unsigned shift = 8 - k - static_cast<unsigned>(bit & 7);
    const unsigned mask = ((1u << k) - 1) << shift;
    std::uint8_t& b = bytes[bit >> 3];
    b = static_cast<std::uint8_t>((b & ~mask) | ((v << shift) & mask));
  }

  static Block filled(std::uint8_t value) {
    Block b;
    b.bytes.fill(value);
    return b;
  }

  friend bool operator==(const Block&, const Block&) = default;
};

/// Every payload bit counted as written; no metadata.
CostBreakdown block_raw_cost(const Block& block, const CostModel& model);
BitCounts block_bit_counts(const Block& block);

}  // namespace avlc
