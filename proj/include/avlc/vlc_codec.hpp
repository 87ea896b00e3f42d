#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "avlc/block.hpp"
#include "avlc/codebook.hpp"
#include "avlc/cost_model.hpp"

namespace avlc {

/// Whether per-block flag bits (the VLC dirty bit, FNW flip flags) are costed.
enum class FlagPolicy { Include, Exclude };

/// Length: encode whenever the rounded-up payload is shorter than the line.
/// Cost: additionally require the encoded write to be strictly cheaper than
/// the raw write (flag bit included).
enum class FallbackMode { Length, Cost };

/// One stored line. When `encoded` (the dirty bit) is false the payload is
/// the raw 64 bytes; otherwise it holds payload_bits meaningful bits,
/// left-aligned, with zero padding up to a whole byte.
struct EncodedBlock {
  bool encoded = false;
  bool cost_mode = false;  // produced under FallbackMode::Cost
  std::uint16_t payload_bits = 0;
  std::vector<std::uint8_t> payload;

  friend bool operator==(const EncodedBlock&, const EncodedBlock&) = default;
};

/// Largest encoded payload that still saves at least one byte.
inline constexpr std::size_t kMaxEncodedBits = (Block::kBytes - 1) * 8;

/// Encoder/decoder for one codebook. Construction checks that the codebook is
/// complete, prefix-free, and that its symbol width divides 8.
class VlcCodec {
 public:
  explicit VlcCodec(const Codebook& book);

  const Codebook& codebook() const { return book_; }

  /// Sum of codeword lengths over the block's data words.
  std::size_t encoded_bits(const Block& block) const;

  EncodedBlock encode(const Block& block) const;
  EncodedBlock encode(const Block& block, const CostModel& model, FallbackMode mode) const;

  /// Throws CorruptStreamError if an encoded payload does not parse into
  /// exactly one line of data words within payload_bits.
  Block decode(const EncodedBlock& enc) const;

 private:
  struct Entry {
    std::uint32_t bits;
    std::uint8_t length;
  };
  EncodedBlock encode_payload(const Block& block) const;
  static EncodedBlock raw(const Block& block);

  Codebook book_;
  unsigned symbol_bits_;
  std::vector<Entry> table_;
  // Binary trie; child 0 is absent (nothing points back to the root),
  // leaves store ~symbol.
  std::vector<std::array<std::int32_t, 2>> trie_;
};

EncodedBlock encode_block(const Block& block, const Codebook& book);
Block decode_block(const EncodedBlock& enc, const Codebook& book);

/// Costs the meaningful payload bits (padding is never written) plus, under
/// FlagPolicy::Include, the dirty bit at its stored value.
CostBreakdown block_write_cost(const EncodedBlock& enc, const CostModel& model, FlagPolicy policy);
BitCounts encoded_bit_counts(const EncodedBlock& enc, FlagPolicy policy);

}  // namespace avlc
