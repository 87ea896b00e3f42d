#include "avlc/eval.hpp"

#include <algorithm>
#include <thread>

#include "avlc/errors.hpp"

namespace avlc {

const CodecTotals* CostReport::find(CodecId id) const {
  for (const auto& r : rows) {
    if (r.codec == id) return &r;
  }
  return nullptr;
}

BlockOutcome evaluate_block(CodecId codec, const Block& block, const CostModel& model,
                            const VlcCodec* vlc, const EvalOptions& options) {
  const BaselineOptions base{options.fnw_word_bits, options.flag_policy};
  switch (codec) {
    case CodecId::Vlc: {
      if (!vlc) throw UsageError("vlc evaluation needs a codebook");
      const EncodedBlock enc = vlc->encode(block, model, options.fallback);
      return {encoded_bit_counts(enc, options.flag_policy), !enc.encoded};
    }
    case CodecId::FpcBdi: {
      static constexpr CodecId kMembers[] = {CodecId::Fpc, CodecId::Bdi};
      BaselineResult r = best_of(block, kMembers, model, base);
      return {r.counts, r.fallback};
    }
    default: {
      BaselineResult r = run_baseline(codec, block, model, base);
      return {r.counts, r.fallback};
    }
  }
}

namespace {

struct Partial {
  std::vector<BitCounts> counts;
  std::vector<std::uint64_t> fallbacks;
};

Partial evaluate_range(std::span<const CorpusBlock> corpus, std::span<const CodecId> codecs,
                       const CostModel& model, const VlcCodec* vlc, const EvalOptions& options) {
  Partial p{std::vector<BitCounts>(codecs.size()), std::vector<std::uint64_t>(codecs.size(), 0)};
  for (const auto& cb : corpus) {
    for (std::size_t c = 0; c < codecs.size(); ++c) {
      const BlockOutcome o = evaluate_block(codecs[c], cb.block, model, vlc, options);
      p.counts[c] += o.counts;
      p.fallbacks[c] += o.fallback ? 1 : 0;
    }
  }
  return p;
}

}  // namespace

CostReport run_eval(std::span<const CorpusBlock> corpus, std::span<const CodecId> requested,
                    const CostModel& model, const std::optional<Codebook>& codebook,
                    const EvalOptions& options) {
  std::vector<CodecId> codecs(requested.begin(), requested.end());
  std::sort(codecs.begin(), codecs.end());
  codecs.erase(std::unique(codecs.begin(), codecs.end()), codecs.end());
  if (codecs.empty()) throw UsageError("no codecs requested");

  const bool wants_vlc = std::find(codecs.begin(), codecs.end(), CodecId::Vlc) != codecs.end();
  if (wants_vlc && !codebook) throw UsageError("vlc evaluation needs a codebook");
  if (!wants_vlc && codebook) throw UsageError("a codebook was given but vlc is not evaluated");
  if (corpus.empty()) throw DataError("corpus contains no blocks");
  if (const unsigned w = options.fnw_word_bits; w != 4 && w != 8 && w != 16 && w != 32) {
    throw UsageError("FNW word size must be 4, 8, 16 or 32 bits");
  }

  std::optional<VlcCodec> vlc;
  if (wants_vlc) vlc.emplace(*codebook);
  const VlcCodec* vlc_ptr = vlc ? &*vlc : nullptr;

  const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, corpus.size());
  std::vector<Partial> partials(workers);
  const std::size_t chunk = (corpus.size() + workers - 1) / workers;
  auto range = [&](std::size_t w) {
    const std::size_t first = std::min(corpus.size(), w * chunk);
    return corpus.subspan(first, std::min(chunk, corpus.size() - first));
  };
  if (workers == 1) {
    partials[0] = evaluate_range(corpus, codecs, model, vlc_ptr, options);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] { partials[w] = evaluate_range(range(w), codecs, model, vlc_ptr, options); });
    }
  }

  CostReport report;
  for (std::size_t c = 0; c < codecs.size(); ++c) {
    CodecTotals t{codecs[c], {}, corpus.size(), 0, 0, std::nullopt};
    for (const auto& p : partials) {
      t.counts += p.counts[c];
      t.fallbacks += p.fallbacks[c];
    }
    t.total_cost = make_breakdown(t.counts, model).total_cost;
    report.rows.push_back(std::move(t));
  }
  if (const CodecTotals* fnw = report.find(CodecId::Fnw); fnw && fnw->total_cost != 0) {
    const Rational denom = fnw->total_cost;
    for (auto& r : report.rows) r.normalized_to_fnw = Rational(r.total_cost / denom);
  }
  return report;
}

}  // namespace avlc
