#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "avlc/block.hpp"
#include "avlc/frequency_table.hpp"
#include "avlc/rational.hpp"

namespace avlc {

/// A line read from a corpus. A short final chunk is zero-padded; only the
/// first valid_bytes bytes are real data.
struct CorpusBlock {
  Block block;
  std::size_t valid_bytes = Block::kBytes;

  bool padded() const { return valid_bytes < Block::kBytes; }
};

/// Streams 64-byte lines from a raw binary file, or from a ".trace" text file
/// holding one 128-hex-digit line per write ('#' comments allowed).
class BlockReader {
 public:
  explicit BlockReader(const std::filesystem::path& path);

  /// Next line in file order, or empty at end of input.
  std::optional<CorpusBlock> next();

 private:
  std::optional<CorpusBlock> next_raw();
  std::optional<CorpusBlock> next_trace();

  std::filesystem::path path_;
  std::ifstream in_;
  bool trace_;
  std::size_t line_ = 0;
};

/// Throws UsageError for any block size other than 64 bytes and IoError when
/// the file cannot be read.
std::vector<CorpusBlock> blocks_from_file(const std::filesystem::path& path,
                                          std::size_t block_bytes = Block::kBytes);
std::vector<CorpusBlock> blocks_from_bytes(std::span<const std::uint8_t> bytes);

/// Occurrence counts of every k-bit data word (k = 2 or 4), in data-word
/// order within each line. Padding of partial lines is not counted.
FrequencyTable pattern_histogram(std::span<const CorpusBlock> blocks, unsigned symbol_bits = 4);

/// Lines whose nibbles are independently 0000 with probability p_zero and
/// otherwise uniform over the 15 other nibbles. Same seed, same lines.
std::vector<CorpusBlock> synthetic_zero_heavy(std::size_t count, const Rational& p_zero,
                                              std::uint64_t seed);

/// Parses "zero-heavy:<p>" and returns p. Throws UsageError otherwise.
Rational parse_synthetic_spec(std::string_view spec);

}  // namespace avlc
