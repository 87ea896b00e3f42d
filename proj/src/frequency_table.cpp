#include "avlc/frequency_table.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "avlc/errors.hpp"

namespace avlc {

FrequencyTable::FrequencyTable(unsigned symbol_bits)
    : symbol_bits_(symbol_bits), weights_(std::size_t{1} << symbol_bits, Rational(0)) {
  if (symbol_bits == 0 || symbol_bits > 16) {
    throw UsageError("symbol width must be between 1 and 16 bits");
  }
}

FrequencyTable::FrequencyTable(unsigned symbol_bits, std::vector<Rational> weights)
    : FrequencyTable(symbol_bits) {
  if (weights.size() != weights_.size()) {
    throw DataError("frequency table needs " + std::to_string(weights_.size()) +
                    " weights, got " + std::to_string(weights.size()));
  }
  for (std::size_t i = 0; i < weights.size(); ++i) set_weight(i, std::move(weights[i]));
}

void FrequencyTable::set_weight(std::size_t symbol, Rational w) {
  if (w < 0) throw DataError("negative frequency weight");
  weights_.at(symbol) = std::move(w);
}

void FrequencyTable::add(std::size_t symbol, const Rational& w) {
  set_weight(symbol, weights_.at(symbol) + w);
}

Rational FrequencyTable::total() const {
  Rational t = 0;
  for (const auto& w : weights_) t += w;
  return t;
}

FrequencyTable normalize(const FrequencyTable& table) {
  const Rational total = table.total();
  if (total == 0) throw EmptyDistributionError("frequency table has zero total weight");
  FrequencyTable out(table.symbol_bits());
  for (std::size_t i = 0; i < table.size(); ++i) out.set_weight(i, table.weight(i) / total);
  return out;
}

std::string symbol_string(std::size_t symbol, unsigned width) {
  std::string s(width, '0');
  for (unsigned i = 0; i < width; ++i) {
    if ((symbol >> (width - 1 - i)) & 1u) s[i] = '1';
  }
  return s;
}

FrequencyTable parse_frequency_table(std::istream& in) {
  std::vector<std::pair<std::string, Rational>> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string word, weight, extra;
    if (!(fields >> word)) continue;
    if (!(fields >> weight) || (fields >> extra)) {
      throw DataError("frequency table line " + std::to_string(lineno) +
                      ": expected '<dataword> <weight>'");
    }
    if (word.find_first_not_of("01") != std::string::npos) {
      throw DataError("frequency table line " + std::to_string(lineno) + ": bad dataword '" +
                      word + "'");
    }
    entries.emplace_back(word, parse_rational(weight));
  }
  if (entries.empty()) throw DataError("frequency table is empty");

  const unsigned width = static_cast<unsigned>(entries.front().first.size());
  FrequencyTable table(width);
  std::vector<bool> seen(table.size(), false);
  for (const auto& [word, weight] : entries) {
    if (word.size() != width) throw DataError("frequency table mixes dataword widths");
    const std::size_t sym = std::stoul(word, nullptr, 2);
    if (seen[sym]) throw DataError("frequency table repeats dataword " + word);
    seen[sym] = true;
    table.set_weight(sym, weight);
  }
  return table;
}

FrequencyTable read_frequency_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open frequency table " + path.string());
  return parse_frequency_table(in);
}

void write_frequency_table(std::ostream& out, const FrequencyTable& table) {
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << symbol_string(i, table.symbol_bits()) << ' ' << to_string(table.weight(i)) << '\n';
  }
}

void write_frequency_table(const std::filesystem::path& path, const FrequencyTable& table) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write frequency table " + path.string());
  write_frequency_table(out, table);
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace avlc
