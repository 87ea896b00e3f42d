#include "avlc/vlc_codec.hpp"

#include <bit>

#include "avlc/errors.hpp"

namespace avlc {

VlcCodec::VlcCodec(const Codebook& book) : book_(book), symbol_bits_(book.symbol_bits()) {
  if (8 % symbol_bits_ != 0) {
    throw UsageError("block codec needs a symbol width dividing 8, got " +
                     std::to_string(symbol_bits_));
  }
  if (auto problems = validate(book); !problems.empty()) {
    throw DataError("invalid codebook: " + problems.front().detail);
  }
  trie_.push_back({0, 0});
  for (std::size_t sym = 0; sym < book.symbol_count(); ++sym) {
    const BitString& cw = book.codeword(sym);
    if (cw.size() > 32) throw UsageError("codewords longer than 32 bits are not supported");
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < cw.size(); ++i) bits = (bits << 1) | (cw[i] ? 1u : 0u);
    table_.push_back({bits, static_cast<std::uint8_t>(cw.size())});

    std::int32_t node = 0;
    for (std::size_t i = 0; i < cw.size(); ++i) {
      const auto at = static_cast<std::size_t>(node);
      if (i + 1 == cw.size()) {
        trie_[at][cw[i]] = ~static_cast<std::int32_t>(sym);
      } else {
        if (trie_[at][cw[i]] == 0) {
          trie_[at][cw[i]] = static_cast<std::int32_t>(trie_.size());
          trie_.push_back({0, 0});
        }
        node = trie_[at][cw[i]];
      }
    }
  }
}

std::size_t VlcCodec::encoded_bits(const Block& block) const {
  const std::size_t n = Block::kBits / symbol_bits_;
  std::size_t bits = 0;
  for (std::size_t i = 0; i < n; ++i) bits += table_[block.symbol(i, symbol_bits_)].length;
  return bits;
}

EncodedBlock VlcCodec::raw(const Block& block) {
  EncodedBlock e;
  e.encoded = false;
  e.payload_bits = Block::kBits;
  e.payload.assign(block.bytes.begin(), block.bytes.end());
  return e;
}

EncodedBlock VlcCodec::encode_payload(const Block& block) const {
  EncodedBlock e;
  e.encoded = true;
  e.payload.assign(Block::kBytes, 0);
  std::size_t pos = 0;
  const std::size_t n = Block::kBits / symbol_bits_;
  for (std::size_t i = 0; i < n; ++i) {
    const Entry& ent = table_[block.symbol(i, symbol_bits_)];
    for (unsigned b = ent.length; b-- > 0; ++pos) {
      if ((ent.bits >> b) & 1u) e.payload[pos >> 3] |= static_cast<std::uint8_t>(0x80 >> (pos & 7));
    }
  }
  e.payload_bits = static_cast<std::uint16_t>(pos);
  e.payload.resize((pos + 7) / 8);
  return e;
}

EncodedBlock VlcCodec::encode(const Block& block) const {
  if (encoded_bits(block) > kMaxEncodedBits) return raw(block);
  return encode_payload(block);
}

EncodedBlock VlcCodec::encode(const Block& block, const CostModel& model, FallbackMode mode) const {
  if (mode == FallbackMode::Length) return encode(block);
  EncodedBlock out = raw(block);
  if (encoded_bits(block) <= kMaxEncodedBits) {
    EncodedBlock enc = encode_payload(block);
    if (block_write_cost(enc, model, FlagPolicy::Include).total_cost <
        block_write_cost(out, model, FlagPolicy::Include).total_cost) {
      out = std::move(enc);
    }
  }
  out.cost_mode = true;
  return out;
}

Block VlcCodec::decode(const EncodedBlock& enc) const {
  Block block;
  if (!enc.encoded) {
    if (enc.payload.size() != Block::kBytes || enc.payload_bits != Block::kBits) {
      throw CorruptStreamError("raw line must carry exactly 64 bytes");
    }
    std::copy(enc.payload.begin(), enc.payload.end(), block.bytes.begin());
    return block;
  }
  if (enc.payload_bits > kMaxEncodedBits || enc.payload.size() != (enc.payload_bits + 7u) / 8u) {
    throw CorruptStreamError("encoded line has inconsistent payload length");
  }

  const std::size_t symbols = Block::kBits / symbol_bits_;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < symbols; ++i) {
    std::int32_t node = 0;
    while (true) {
      if (pos >= enc.payload_bits) {
        throw CorruptStreamError("encoded line ends after " + std::to_string(i) + " of " +
                                 std::to_string(symbols) + " data words");
      }
      const int bit = (enc.payload[pos >> 3] >> (7 - (pos & 7))) & 1;
      ++pos;
      node = trie_[static_cast<std::size_t>(node)][static_cast<std::size_t>(bit)];
      if (node == 0) throw CorruptStreamError("bit pattern matches no codeword");
      if (node < 0) break;
    }
    block.set_symbol(i, symbol_bits_, static_cast<unsigned>(~node));
  }
  if (pos != enc.payload_bits) {
    throw CorruptStreamError("encoded line has " + std::to_string(enc.payload_bits - pos) +
                             " trailing bits");
  }
  return block;
}

EncodedBlock encode_block(const Block& block, const Codebook& book) {
  return VlcCodec(book).encode(block);
}

Block decode_block(const EncodedBlock& enc, const Codebook& book) {
  return VlcCodec(book).decode(enc);
}

BitCounts encoded_bit_counts(const EncodedBlock& enc, FlagPolicy policy) {
  BitCounts c;
  const std::size_t full = enc.payload_bits / 8u;
  for (std::size_t i = 0; i < full; ++i) {
    c.data_ones += static_cast<std::uint64_t>(std::popcount(enc.payload[i]));
  }
  if (const unsigned tail = enc.payload_bits % 8u; tail != 0) {
    const auto mask = static_cast<std::uint8_t>(0xFF << (8 - tail));
    c.data_ones += static_cast<std::uint64_t>(std::popcount(static_cast<std::uint8_t>(enc.payload[full] & mask)));
  }
  c.data_zeros = enc.payload_bits - c.data_ones;
  if (policy == FlagPolicy::Include) {
    (enc.encoded ? c.meta_ones : c.meta_zeros) += 1;
  }
  return c;
}

CostBreakdown block_write_cost(const EncodedBlock& enc, const CostModel& model, FlagPolicy policy) {
  return make_breakdown(encoded_bit_counts(enc, policy), model);
}

}  // namespace avlc
