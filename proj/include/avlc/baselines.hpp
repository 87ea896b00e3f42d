#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "avlc/bitstring.hpp"
#include "avlc/block.hpp"
#include "avlc/cost_model.hpp"
#include "avlc/vlc_codec.hpp"

namespace avlc {

/// Codecs known to the evaluator. Declaration order is the tie-break order.
enum class CodecId { Vlc, Fnw, Fpc, Bdi, FpcBdi, Raw };

std::string_view to_string(CodecId id);
std::optional<CodecId> parse_codec(std::string_view name);

/// Everything a baseline stores for one line, in storage order, and how it
/// was costed. `counts` excludes bits the flag policy leaves uncosted.
struct BaselineResult {
  CodecId codec;
  BitString written;
  BitCounts counts;
  CostBreakdown breakdown;
  bool fallback = false;  // stored uncompressed
};

struct BaselineOptions {
  unsigned fnw_word_bits = 8;
  FlagPolicy flag_policy = FlagPolicy::Include;
};

// -- Flip-N-Write -----------------------------------------------------------

/// Stores every word_bits-wide word either as is (flag 0) or complemented
/// (flag 1), whichever costs less including the flag. Equal costs go to the
/// branch with fewer zero data bits, then to the unflipped branch. Flags are
/// metadata; under FlagPolicy::Exclude they are stored but not costed.
/// word_bits must be 4, 8, 16 or 32.
BaselineResult fnw_encode(const Block& block, unsigned word_bits, const CostModel& model,
                          FlagPolicy policy = FlagPolicy::Include);

// -- Frequent Pattern Compression -----------------------------------------

/// 3-bit FPC prefixes.
enum class FpcPattern : std::uint8_t {
  Zero = 0,            // 000, no payload
  SignExt4 = 1,        // 001, 4 bits
  SignExt8 = 2,        // 010, 8 bits
  SignExt16 = 3,       // 011, 16 bits
  ZeroPaddedHalf = 4,  // 100, upper halfword; lower halfword is zero
  TwoSignExtBytes = 5, // 101, each halfword a sign-extended byte
  RepeatedByte = 6,    // 110, 8 bits
  Uncompressed = 7,    // 111, 32 bits
};

struct FpcWord {
  FpcPattern pattern;
  std::uint32_t payload;
  unsigned payload_bits;
};

/// True when `word` can be stored with `pattern`; fills the payload.
std::optional<FpcWord> fpc_try_pattern(std::uint32_t word, FpcPattern pattern);
/// Cheapest matching pattern (prefix and payload costed); ties go to the
/// lower prefix value.
FpcWord fpc_encode_word(std::uint32_t word, const CostModel& model);
std::uint32_t fpc_decode_word(const FpcWord& w);

/// Words are the 16 little-endian 32-bit values of the line. Prefixes are
/// metadata, payloads data; the unused tail of the line is never written.
BaselineResult fpc_encode(const Block& block, const CostModel& model);
/// Inverse of fpc_encode's `written` bits.
Block fpc_decode(const BitString& written);

// -- Base-Delta-Immediate -------------------------------------------------

/// Tag values are the enumerator values, stored in 4 bits.
enum class BdiEncoding : std::uint8_t {
  Zeros = 0,
  Repeated = 1,
  Base8Delta1 = 2,
  Base8Delta2 = 3,
  Base8Delta4 = 4,
  Base4Delta1 = 5,
  Base4Delta2 = 6,
  Base2Delta1 = 7,
  Uncompressed = 15,
};

/// Data bits (base and deltas, without the tag) for the encoding, or empty
/// when the line does not fit it. Base is the first little-endian element.
std::optional<BitString> bdi_try_encoding(const Block& block, BdiEncoding encoding);

/// Cheapest valid encoding under the model; ties go to the earlier encoding
/// in declaration order. The tag is metadata.
BaselineResult bdi_encode(const Block& block, const CostModel& model);
Block bdi_decode(const BitString& written);

// -- combinations -----------------------------------------------------------

/// Raw line, no metadata.
BaselineResult raw_encode(const Block& block, const CostModel& model);

/// One of Fnw, Fpc, Bdi, Raw.
BaselineResult run_baseline(CodecId codec, const Block& block, const CostModel& model,
                            const BaselineOptions& options = {});

/// Cheapest member result; ties go to the codec declared first in CodecId.
/// Throws UsageError on an empty set.
BaselineResult best_of(const Block& block, std::span<const CodecId> codecs, const CostModel& model,
                       const BaselineOptions& options = {});

}  // namespace avlc
