#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "avlc/bitstring.hpp"
#include "avlc/cost_model.hpp"
#include "avlc/frequency_table.hpp"
#include "avlc/rational.hpp"

namespace avlc {

/// Mapping from each k-bit data word to a codeword. Entries may be absent
/// while a codebook is being assembled or when loaded from a partial file;
/// validate() reports that.
class Codebook {
 public:
  explicit Codebook(unsigned symbol_bits);
  Codebook(unsigned symbol_bits, std::vector<BitString> codewords);

  unsigned symbol_bits() const { return symbol_bits_; }
  std::size_t symbol_count() const { return entries_.size(); }
  const std::optional<BitString>& entry(std::size_t symbol) const { return entries_.at(symbol); }
  /// Throws DataError if the symbol has no codeword.
  const BitString& codeword(std::size_t symbol) const;
  void set(std::size_t symbol, BitString codeword);
  bool complete() const;

  /// Sum of 2^-len over present codewords.
  Rational kraft_sum() const;

  friend bool operator==(const Codebook&, const Codebook&) = default;

 private:
  unsigned symbol_bits_;
  std::vector<std::optional<BitString>> entries_;
};

struct Violation {
  enum class Kind { MissingSymbol, EmptyCodeword, DuplicateCodeword, PrefixConflict, KraftExceeded };
  Kind kind;
  std::string detail;
};
const char* to_string(Violation::Kind kind);

/// All structural problems with the codebook; empty means usable for
/// encoding and decoding.
std::vector<Violation> validate(const Codebook& book);

/// Per-symbol averages under a normalized frequency table.
/// expected_cost = expected_zeros*alpha0 + expected_ones*alpha1.
struct CodeStats {
  Rational expected_cost;
  Rational expected_zeros;
  Rational expected_ones;
  Rational expected_length;

  friend bool operator==(const CodeStats&, const CodeStats&) = default;
};

/// Throws DataError on width mismatch or missing codewords, and
/// EmptyDistributionError on an all-zero table.
CodeStats code_stats(const Codebook& book, const FrequencyTable& freqs, const CostModel& model);

/// Cost ratio alpha0/alpha1 at which two codes cost the same:
/// (onesA - onesB) / (zerosB - zerosA). Empty when the expected zero counts
/// coincide.
std::optional<Rational> crossover_ratio(const CodeStats& a, const CodeStats& b);

/// The fixed 16-entry nibble code shipped with the library.
Codebook table1_codebook();

/// A 4-bit pattern distribution dominated by 0000: 55/100 for 0000 and 3/100
/// for each other nibble. An approximation, not measured data.
FrequencyTable approximate_pattern_frequencies();

/// Text format: "<binary dataword> <binary codeword>" per line, '#' comments.
Codebook parse_codebook(std::istream& in);
Codebook read_codebook(const std::filesystem::path& path);
void write_codebook(std::ostream& out, const Codebook& book);
void write_codebook(const std::filesystem::path& path, const Codebook& book);

}  // namespace avlc
