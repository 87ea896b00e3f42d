#include "avlc/baselines.hpp"

#include <array>
#include <bit>

#include "avlc/errors.hpp"

namespace avlc {
namespace {

std::int64_t scaled_cost(const ScaledCosts& c, std::uint64_t zeros, std::uint64_t ones) {
  return static_cast<std::int64_t>(zeros) * c.zero + static_cast<std::int64_t>(ones) * c.one;
}

// Sequential MSB-first reader over a BitString.
class BitReader {
 public:
  explicit BitReader(const BitString& bits) : bits_(bits) {}
  std::uint64_t read(unsigned width) {
    if (pos_ + width > bits_.size()) throw CorruptStreamError("bit stream ends early");
    std::uint64_t v = 0;
    for (unsigned i = 0; i < width; ++i) v = (v << 1) | (bits_[pos_++] ? 1u : 0u);
    return v;
  }
  bool at_end() const { return pos_ == bits_.size(); }

 private:
  const BitString& bits_;
  std::size_t pos_ = 0;
};

std::uint64_t load_le(const Block& block, std::size_t offset, std::size_t bytes) {
  std::uint64_t v = 0;
  for (std::size_t j = 0; j < bytes; ++j) v |= std::uint64_t{block.bytes[offset + j]} << (8 * j);
  return v;
}

void store_le(Block& block, std::size_t offset, std::size_t bytes, std::uint64_t v) {
  for (std::size_t j = 0; j < bytes; ++j) block.bytes[offset + j] = static_cast<std::uint8_t>(v >> (8 * j));
}

std::uint64_t low_mask(unsigned bits) {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

std::int64_t sign_extend(std::uint64_t v, unsigned bits) {
  if (bits >= 64) return static_cast<std::int64_t>(v);
  const std::uint64_t m = std::uint64_t{1} << (bits - 1);
  v &= low_mask(bits);
  return static_cast<std::int64_t>((v ^ m) - m);
}

bool fits_signed(std::int64_t v, unsigned bits) {
  const std::int64_t lim = std::int64_t{1} << (bits - 1);
  return v >= -lim && v < lim;
}

BaselineResult finish(CodecId codec, BitString written, BitCounts counts, const CostModel& model,
                      bool fallback = false) {
  BaselineResult r{codec, std::move(written), counts, make_breakdown(counts, model), fallback};
  return r;
}

void count_into(BitCounts& c, std::uint64_t value, unsigned width, bool meta) {
  const auto ones = static_cast<std::uint64_t>(std::popcount(value & low_mask(width)));
  if (meta) {
    c.meta_ones += ones;
    c.meta_zeros += width - ones;
  } else {
    c.data_ones += ones;
    c.data_zeros += width - ones;
  }
}

struct BdiLayout {
  unsigned base_bytes;
  unsigned delta_bytes;
};

std::optional<BdiLayout> bdi_layout(BdiEncoding e) {
  switch (e) {
    case BdiEncoding::Base8Delta1: return BdiLayout{8, 1};
    case BdiEncoding::Base8Delta2: return BdiLayout{8, 2};
    case BdiEncoding::Base8Delta4: return BdiLayout{8, 4};
    case BdiEncoding::Base4Delta1: return BdiLayout{4, 1};
    case BdiEncoding::Base4Delta2: return BdiLayout{4, 2};
    case BdiEncoding::Base2Delta1: return BdiLayout{2, 1};
    default: return std::nullopt;
  }
}

constexpr std::array<BdiEncoding, 9> kBdiEncodings = {
    BdiEncoding::Zeros,       BdiEncoding::Repeated,    BdiEncoding::Base8Delta1,
    BdiEncoding::Base8Delta2, BdiEncoding::Base8Delta4, BdiEncoding::Base4Delta1,
    BdiEncoding::Base4Delta2, BdiEncoding::Base2Delta1, BdiEncoding::Uncompressed};

constexpr unsigned kBdiTagBits = 4;
constexpr unsigned kFpcPrefixBits = 3;

}  // namespace

std::string_view to_string(CodecId id) {
  switch (id) {
    case CodecId::Vlc: return "vlc";
    case CodecId::Fnw: return "fnw";
    case CodecId::Fpc: return "fpc";
    case CodecId::Bdi: return "bdi";
    case CodecId::FpcBdi: return "fpc+bdi";
    case CodecId::Raw: return "raw";
  }
  return "?";
}

std::optional<CodecId> parse_codec(std::string_view name) {
  for (CodecId id : {CodecId::Vlc, CodecId::Fnw, CodecId::Fpc, CodecId::Bdi, CodecId::FpcBdi,
                     CodecId::Raw}) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

// -- FNW ----------------------------------------------------------------------

BaselineResult fnw_encode(const Block& block, unsigned word_bits, const CostModel& model,
                          FlagPolicy policy) {
  if (word_bits != 4 && word_bits != 8 && word_bits != 16 && word_bits != 32) {
    throw UsageError("FNW word size must be 4, 8, 16 or 32 bits");
  }
  const ScaledCosts sc = scale(model);
  const bool costed_flag = policy == FlagPolicy::Include;
  const unsigned bytes_per_word = std::max(1u, word_bits / 8);
  const std::uint64_t mask = low_mask(word_bits);

  BitString written;
  BitCounts counts;
  const std::size_t words = Block::kBits / word_bits;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t word = 0;
    if (word_bits == 4) {
      word = block.nibble(w);
    } else {
      for (unsigned j = 0; j < bytes_per_word; ++j) word = (word << 8) | block.bytes[w * bytes_per_word + j];
    }
    const auto ones = static_cast<std::uint64_t>(std::popcount(word));
    const std::uint64_t zeros = word_bits - ones;
    const std::int64_t keep = scaled_cost(sc, zeros, ones) + (costed_flag ? sc.zero : 0);
    const std::int64_t flip = scaled_cost(sc, ones, zeros) + (costed_flag ? sc.one : 0);
    const bool flipped = flip < keep || (flip == keep && ones < zeros);

    const std::uint64_t stored = flipped ? (~word & mask) : word;
    written.append_bits(stored, word_bits);
    written.push_back(flipped);
    count_into(counts, stored, word_bits, false);
    if (costed_flag) (flipped ? counts.meta_ones : counts.meta_zeros) += 1;
  }
  return finish(CodecId::Fnw, std::move(written), counts, model);
}

// -- FPC ----------------------------------------------------------------------

std::optional<FpcWord> fpc_try_pattern(std::uint32_t word, FpcPattern pattern) {
  const auto s = static_cast<std::int32_t>(word);
  const std::uint32_t hi = word >> 16;
  const std::uint32_t lo = word & 0xFFFF;
  switch (pattern) {
    case FpcPattern::Zero:
      if (word == 0) return FpcWord{pattern, 0, 0};
      break;
    case FpcPattern::SignExt4:
      if (fits_signed(s, 4)) return FpcWord{pattern, word & 0xF, 4};
      break;
    case FpcPattern::SignExt8:
      if (fits_signed(s, 8)) return FpcWord{pattern, word & 0xFF, 8};
      break;
    case FpcPattern::SignExt16:
      if (fits_signed(s, 16)) return FpcWord{pattern, lo, 16};
      break;
    case FpcPattern::ZeroPaddedHalf:
      if (lo == 0) return FpcWord{pattern, hi, 16};
      break;
    case FpcPattern::TwoSignExtBytes:
      if (fits_signed(sign_extend(hi, 16), 8) && fits_signed(sign_extend(lo, 16), 8)) {
        return FpcWord{pattern, ((hi & 0xFF) << 8) | (lo & 0xFF), 16};
      }
      break;
    case FpcPattern::RepeatedByte:
      if (word == (word & 0xFF) * 0x01010101u) return FpcWord{pattern, word & 0xFF, 8};
      break;
    case FpcPattern::Uncompressed:
      return FpcWord{pattern, word, 32};
  }
  return std::nullopt;
}

namespace {

FpcWord fpc_cheapest(std::uint32_t word, const ScaledCosts& sc) {
  std::optional<FpcWord> best;
  std::int64_t best_cost = 0;
  for (std::uint8_t p = 0; p < 8; ++p) {
    auto cand = fpc_try_pattern(word, static_cast<FpcPattern>(p));
    if (!cand) continue;
    const auto pre_ones = static_cast<std::uint64_t>(std::popcount(unsigned{p}));
    const auto pay_ones = static_cast<std::uint64_t>(std::popcount(cand->payload));
    const std::int64_t cost = scaled_cost(sc, kFpcPrefixBits - pre_ones, pre_ones) +
                              scaled_cost(sc, cand->payload_bits - pay_ones, pay_ones);
    if (!best || cost < best_cost) {
      best = cand;
      best_cost = cost;
    }
  }
  return *best;
}

}  // namespace

FpcWord fpc_encode_word(std::uint32_t word, const CostModel& model) {
  return fpc_cheapest(word, scale(model));
}

std::uint32_t fpc_decode_word(const FpcWord& w) {
  const std::uint32_t p = w.payload;
  switch (w.pattern) {
    case FpcPattern::Zero: return 0;
    case FpcPattern::SignExt4: return static_cast<std::uint32_t>(sign_extend(p, 4));
    case FpcPattern::SignExt8: return static_cast<std::uint32_t>(sign_extend(p, 8));
    case FpcPattern::SignExt16: return static_cast<std::uint32_t>(sign_extend(p, 16));
    case FpcPattern::ZeroPaddedHalf: return (p & 0xFFFF) << 16;
    case FpcPattern::TwoSignExtBytes: {
      const auto hi = static_cast<std::uint32_t>(sign_extend(p >> 8, 8)) & 0xFFFF;
      const auto lo = static_cast<std::uint32_t>(sign_extend(p & 0xFF, 8)) & 0xFFFF;
      return (hi << 16) | lo;
    }
    case FpcPattern::RepeatedByte: return (p & 0xFF) * 0x01010101u;
    case FpcPattern::Uncompressed: return p;
  }
  throw CorruptStreamError("bad FPC prefix");
}

BaselineResult fpc_encode(const Block& block, const CostModel& model) {
  const ScaledCosts sc = scale(model);
  BitString written;
  BitCounts counts;
  for (std::size_t i = 0; i < Block::kBytes / 4; ++i) {
    const auto word = static_cast<std::uint32_t>(load_le(block, 4 * i, 4));
    const FpcWord w = fpc_cheapest(word, sc);
    written.append_bits(static_cast<std::uint8_t>(w.pattern), kFpcPrefixBits);
    written.append_bits(w.payload, w.payload_bits);
    count_into(counts, static_cast<std::uint8_t>(w.pattern), kFpcPrefixBits, true);
    count_into(counts, w.payload, w.payload_bits, false);
  }
  return finish(CodecId::Fpc, std::move(written), counts, model);
}

Block fpc_decode(const BitString& written) {
  static constexpr std::array<unsigned, 8> kPayloadBits = {0, 4, 8, 16, 16, 16, 8, 32};
  BitReader in(written);
  Block block;
  for (std::size_t i = 0; i < Block::kBytes / 4; ++i) {
    const auto p = static_cast<std::uint8_t>(in.read(kFpcPrefixBits));
    FpcWord w{static_cast<FpcPattern>(p), 0, kPayloadBits[p]};
    w.payload = static_cast<std::uint32_t>(in.read(w.payload_bits));
    store_le(block, 4 * i, 4, fpc_decode_word(w));
  }
  if (!in.at_end()) throw CorruptStreamError("trailing bits after FPC line");
  return block;
}

// -- BDI ----------------------------------------------------------------------

std::optional<BitString> bdi_try_encoding(const Block& block, BdiEncoding encoding) {
  BitString data;
  switch (encoding) {
    case BdiEncoding::Zeros:
      for (auto b : block.bytes) {
        if (b != 0) return std::nullopt;
      }
      return data;
    case BdiEncoding::Repeated: {
      const std::uint64_t v = load_le(block, 0, 8);
      for (std::size_t i = 8; i < Block::kBytes; i += 8) {
        if (load_le(block, i, 8) != v) return std::nullopt;
      }
      data.append_bits(v, 64);
      return data;
    }
    case BdiEncoding::Uncompressed:
      for (auto b : block.bytes) data.append_bits(b, 8);
      return data;
    default:
      break;
  }
  const BdiLayout lay = *bdi_layout(encoding);
  const unsigned elem_bits = lay.base_bytes * 8;
  const unsigned delta_bits = lay.delta_bytes * 8;
  const std::uint64_t base = load_le(block, 0, lay.base_bytes);
  data.append_bits(base, elem_bits);
  for (std::size_t off = 0; off < Block::kBytes; off += lay.base_bytes) {
    const std::uint64_t diff = (load_le(block, off, lay.base_bytes) - base) & low_mask(elem_bits);
    const std::int64_t delta = sign_extend(diff, elem_bits);
    if (!fits_signed(delta, delta_bits)) return std::nullopt;
    data.append_bits(static_cast<std::uint64_t>(delta) & low_mask(delta_bits), delta_bits);
  }
  return data;
}

BaselineResult bdi_encode(const Block& block, const CostModel& model) {
  const ScaledCosts sc = scale(model);
  std::optional<BaselineResult> best;
  std::int64_t best_cost = 0;
  for (BdiEncoding e : kBdiEncodings) {
    auto data = bdi_try_encoding(block, e);
    if (!data) continue;
    const auto tag = static_cast<std::uint8_t>(e);
    BitCounts counts;
    count_into(counts, tag, kBdiTagBits, true);
    counts.data_ones = data->count_ones();
    counts.data_zeros = data->count_zeros();
    const std::int64_t cost = scaled_cost(sc, counts.data_zeros + counts.meta_zeros,
                                          counts.data_ones + counts.meta_ones);
    if (!best || cost < best_cost) {
      BitString written;
      written.append_bits(tag, kBdiTagBits);
      written.append(*data);
      best = finish(CodecId::Bdi, std::move(written), counts, model, e == BdiEncoding::Uncompressed);
      best_cost = cost;
    }
  }
  return std::move(*best);
}

Block bdi_decode(const BitString& written) {
  BitReader in(written);
  const auto tag = static_cast<BdiEncoding>(in.read(kBdiTagBits));
  Block block;
  switch (tag) {
    case BdiEncoding::Zeros:
      break;
    case BdiEncoding::Repeated: {
      const std::uint64_t v = in.read(64);
      for (std::size_t i = 0; i < Block::kBytes; i += 8) store_le(block, i, 8, v);
      break;
    }
    case BdiEncoding::Uncompressed:
      for (auto& b : block.bytes) b = static_cast<std::uint8_t>(in.read(8));
      break;
    default: {
      const auto lay = bdi_layout(tag);
      if (!lay) throw CorruptStreamError("unknown BDI tag");
      const unsigned elem_bits = lay->base_bytes * 8;
      const std::uint64_t base = in.read(elem_bits);
      for (std::size_t off = 0; off < Block::kBytes; off += lay->base_bytes) {
        const std::int64_t delta = sign_extend(in.read(lay->delta_bytes * 8), lay->delta_bytes * 8);
        store_le(block, off, lay->base_bytes,
                 (base + static_cast<std::uint64_t>(delta)) & low_mask(elem_bits));
      }
    }
  }
  if (!in.at_end()) throw CorruptStreamError("trailing bits after BDI line");
  return block;
}

// -- combinations ---------------------------------------------------------------

BaselineResult raw_encode(const Block& block, const CostModel& model) {
  BitString written = BitString::from_bytes(block.bytes, Block::kBits);
  return finish(CodecId::Raw, std::move(written), block_bit_counts(block), model);
}

BaselineResult run_baseline(CodecId codec, const Block& block, const CostModel& model,
                            const BaselineOptions& options) {
  switch (codec) {
    case CodecId::Fnw: return fnw_encode(block, options.fnw_word_bits, model, options.flag_policy);
    case CodecId::Fpc: return fpc_encode(block, model);
    case CodecId::Bdi: return bdi_encode(block, model);
    case CodecId::Raw: return raw_encode(block, model);
    default: break;
  }
  throw UsageError(std::string(to_string(codec)) + " is not a standalone baseline");
}

BaselineResult best_of(const Block& block, std::span<const CodecId> codecs, const CostModel& model,
                       const BaselineOptions& options) {
  if (codecs.empty()) throw UsageError("best_of needs at least one codec");
  std::optional<BaselineResult> best;
  for (CodecId id : codecs) {
    BaselineResult r = run_baseline(id, block, model, options);
    if (!best || r.breakdown.total_cost < best->breakdown.total_cost ||
        (r.breakdown.total_cost == best->breakdown.total_cost && r.codec < best->codec)) {
      best = std::move(r);
    }
  }
  return std::move(*best);
}

}  // namespace avlc
