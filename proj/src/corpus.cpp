#include "avlc/corpus.hpp"

#include <array>
#include <cctype>
#include <limits>
#include <random>
#include <string>

#include "avlc/errors.hpp"

namespace avlc {

BlockReader::BlockReader(const std::filesystem::path& path)
    : path_(path), trace_(path.extension() == ".trace") {
  in_.open(path, trace_ ? std::ios::in : std::ios::binary);
  if (!in_) throw IoError("cannot open corpus file " + path.string());
}

std::optional<CorpusBlock> BlockReader::next() { return trace_ ? next_trace() : next_raw(); }

std::optional<CorpusBlock> BlockReader::next_raw() {
  CorpusBlock cb;
  in_.read(reinterpret_cast<char*>(cb.block.bytes.data()), Block::kBytes);
  const auto got = static_cast<std::size_t>(in_.gcount());
  if (in_.bad()) throw IoError("read failed for " + path_.string());
  if (got == 0) return std::nullopt;
  cb.valid_bytes = got;
  return cb;
}

std::optional<CorpusBlock> BlockReader::next_trace() {
  std::string line;
  while (std::getline(in_, line)) {
    ++line_;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string hex;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) hex.push_back(c);
    }
    if (hex.empty()) continue;
    if (hex.size() != 2 * Block::kBytes) {
      throw DataError(path_.string() + ":" + std::to_string(line_) + ": expected " +
                      std::to_string(2 * Block::kBytes) + " hex digits");
    }
    CorpusBlock cb;
    for (std::size_t i = 0; i < Block::kBytes; ++i) {
      const std::string byte = hex.substr(2 * i, 2);
      if (byte.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos) {
        throw DataError(path_.string() + ":" + std::to_string(line_) + ": bad hex digit");
      }
      cb.block.bytes[i] = static_cast<std::uint8_t>(std::stoul(byte, nullptr, 16));
    }
    return cb;
  }
  if (in_.bad()) throw IoError("read failed for " + path_.string());
  return std::nullopt;
}

std::vector<CorpusBlock> blocks_from_file(const std::filesystem::path& path, std::size_t block_bytes) {
  if (block_bytes != Block::kBytes) {
    throw UsageError("only " + std::to_string(Block::kBytes) + "-byte blocks are supported");
  }
  BlockReader reader(path);
  std::vector<CorpusBlock> out;
  while (auto b = reader.next()) out.push_back(*b);
  return out;
}

std::vector<CorpusBlock> blocks_from_bytes(std::span<const std::uint8_t> bytes) {
  std::vector<CorpusBlock> out;
  for (std::size_t off = 0; off < bytes.size(); off += Block::kBytes) {
    CorpusBlock cb;
    cb.valid_bytes = std::min(Block::kBytes, bytes.size() - off);
    std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(off), cb.valid_bytes, cb.block.bytes.begin());
    out.push_back(cb);
  }
  return out;
}

FrequencyTable pattern_histogram(std::span<const CorpusBlock> blocks, unsigned symbol_bits) {
  if (symbol_bits != 2 && symbol_bits != 4) {
    throw UsageError("pattern histograms support 2- or 4-bit data words");
  }
  std::array<std::uint64_t, 16> counts{};
  const std::size_t per_byte = 8 / symbol_bits;
  for (const auto& cb : blocks) {
    const std::size_t n = cb.valid_bytes * per_byte;
    for (std::size_t i = 0; i < n; ++i) ++counts[cb.block.symbol(i, symbol_bits)];
  }
  FrequencyTable t(symbol_bits);
  for (std::size_t s = 0; s < t.size(); ++s) t.set_weight(s, Rational(counts[s]));
  return t;
}

std::vector<CorpusBlock> synthetic_zero_heavy(std::size_t count, const Rational& p_zero,
                                              std::uint64_t seed) {
  if (p_zero < 0 || p_zero > 1) throw UsageError("zero-nibble probability must be in [0,1]");
  // Threshold on a uniform 64-bit draw; p = 1 maps to "always".
  const BigInt scaled = boost::multiprecision::numerator(p_zero) * (BigInt(1) << 64) /
                        boost::multiprecision::denominator(p_zero);
  const bool always = scaled > BigInt(std::numeric_limits<std::uint64_t>::max());
  const auto threshold = always ? 0 : scaled.convert_to<std::uint64_t>();

  std::mt19937_64 rng(seed);
  std::vector<CorpusBlock> out(count);
  for (auto& cb : out) {
    for (std::size_t i = 0; i < Block::kNibbles; ++i) {
      const std::uint64_t r = rng();
      if (always || r < threshold) {
        cb.block.set_nibble(i, 0);
      } else {
        const std::uint64_t u = rng();
        const auto pick = static_cast<std::uint8_t>((static_cast<unsigned __int128>(u) * 15) >> 64);
        cb.block.set_nibble(i, static_cast<std::uint8_t>(1 + pick));
      }
    }
  }
  return out;
}

Rational parse_synthetic_spec(std::string_view spec) {
  constexpr std::string_view kPrefix = "zero-heavy:";
  if (spec.substr(0, kPrefix.size()) != kPrefix) {
    throw UsageError("unknown synthetic corpus '" + std::string(spec) + "' (expected zero-heavy:<p>)");
  }
  Rational p;
  try {
    p = parse_rational(spec.substr(kPrefix.size()));
  } catch (const DataError& e) {
    throw UsageError(e.what());
  }
  if (p < 0 || p > 1) throw UsageError("zero-nibble probability must be in [0,1]");
  return p;
}

}  // namespace avlc
