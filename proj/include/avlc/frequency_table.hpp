#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "avlc/rational.hpp"

namespace avlc {

/// Nonnegative weight per k-bit data word; 2^k entries.
class FrequencyTable {
 public:
  explicit FrequencyTable(unsigned symbol_bits);
  FrequencyTable(unsigned symbol_bits, std::vector<Rational> weights);

  unsigned symbol_bits() const { return symbol_bits_; }
  std::size_t size() const { return weights_.size(); }
  const Rational& weight(std::size_t symbol) const { return weights_.at(symbol); }
  const std::vector<Rational>& weights() const { return weights_; }
  void set_weight(std::size_t symbol, Rational w);
  void add(std::size_t symbol, const Rational& w);
  Rational total() const;

  friend bool operator==(const FrequencyTable&, const FrequencyTable&) = default;

 private:
  unsigned symbol_bits_;
  std::vector<Rational> weights_;
};

/// Divides every weight by the total. Throws EmptyDistributionError when the
/// total is zero.
FrequencyTable normalize(const FrequencyTable& table);

/// Text format: "<binary dataword> <weight>" per line, '#' comments, any
/// order, absent symbols weigh 0. Width is taken from the dataword strings.
FrequencyTable parse_frequency_table(std::istream& in);
FrequencyTable read_frequency_table(const std::filesystem::path& path);
void write_frequency_table(std::ostream& out, const FrequencyTable& table);
void write_frequency_table(const std::filesystem::path& path, const FrequencyTable& table);

/// Binary representation of symbol, zero-padded to width bits.
std::string symbol_string(std::size_t symbol, unsigned width);

}  // namespace avlc
