#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "avlc/baselines.hpp"
#include "avlc/codebook.hpp"
#include "avlc/corpus.hpp"
#include "avlc/cost_model.hpp"
#include "avlc/vlc_codec.hpp"

namespace avlc {

struct EvalOptions {
  FlagPolicy flag_policy = FlagPolicy::Include;
  unsigned fnw_word_bits = 8;
  FallbackMode fallback = FallbackMode::Length;
  unsigned workers = 1;
};

/// Aggregate over a corpus for one codec. written_* count data bits;
/// metadata_bits counts costed metadata bits.
struct CodecTotals {
  CodecId codec;
  BitCounts counts;
  std::uint64_t blocks = 0;
  std::uint64_t fallbacks = 0;
  Rational total_cost = 0;
  /// total_cost / FNW total_cost, present when FNW was evaluated.
  std::optional<Rational> normalized_to_fnw;
};

struct CostReport {
  std::vector<CodecTotals> rows;  // in CodecId order

  const CodecTotals* find(CodecId id) const;
};

/// Bit counts and fallback flag for one line under one codec.
struct BlockOutcome {
  BitCounts counts;
  bool fallback = false;
};
BlockOutcome evaluate_block(CodecId codec, const Block& block, const CostModel& model,
                            const VlcCodec* vlc, const EvalOptions& options);

/// Runs every requested codec over every line. `codebook` is required
/// exactly when Vlc is requested (UsageError otherwise); an empty corpus is a
/// DataError. The report does not depend on options.workers.
CostReport run_eval(std::span<const CorpusBlock> corpus, std::span<const CodecId> codecs,
                    const CostModel& model, const std::optional<Codebook>& codebook,
                    const EvalOptions& options = {});

}  // namespace avlc
