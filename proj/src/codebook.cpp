#include "avlc/codebook.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "avlc/errors.hpp"

namespace avlc {

Codebook::Codebook(unsigned symbol_bits)
    : symbol_bits_(symbol_bits), entries_(std::size_t{1} << symbol_bits) {
  if (symbol_bits == 0 || symbol_bits > 16) {
    throw UsageError("symbol width must be between 1 and 16 bits");
  }
}

Codebook::Codebook(unsigned symbol_bits, std::vector<BitString> codewords) : Codebook(symbol_bits) {
  if (codewords.size() != entries_.size()) {
    throw DataError("codebook needs " + std::to_string(entries_.size()) + " codewords");
  }
  for (std::size_t i = 0; i < codewords.size(); ++i) entries_[i] = std::move(codewords[i]);
}

const BitString& Codebook::codeword(std::size_t symbol) const {
  const auto& e = entries_.at(symbol);
  if (!e) throw DataError("no codeword for dataword " + symbol_string(symbol, symbol_bits_));
  return *e;
}

void Codebook::set(std::size_t symbol, BitString codeword) { entries_.at(symbol) = std::move(codeword); }

bool Codebook::complete() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.has_value(); });
}

Rational Codebook::kraft_sum() const {
  Rational sum = 0;
  for (const auto& e : entries_) {
    if (e) sum += Rational(1, BigInt(1) << e->size());
  }
  return sum;
}

const char* to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::MissingSymbol: return "missing-symbol";
    case Violation::Kind::EmptyCodeword: return "empty-codeword";
    case Violation::Kind::DuplicateCodeword: return "duplicate-codeword";
    case Violation::Kind::PrefixConflict: return "prefix-conflict";
    case Violation::Kind::KraftExceeded: return "kraft-exceeded";
  }
  return "unknown";
}

std::vector<Violation> validate(const Codebook& book) {
  std::vector<Violation> out;
  const unsigned k = book.symbol_bits();
  for (std::size_t i = 0; i < book.symbol_count(); ++i) {
    const auto& e = book.entry(i);
    if (!e) {
      out.push_back({Violation::Kind::MissingSymbol, "dataword " + symbol_string(i, k) + " has no codeword"});
    } else if (e->empty()) {
      out.push_back({Violation::Kind::EmptyCodeword, "dataword " + symbol_string(i, k) + " has an empty codeword"});
    }
  }
  for (std::size_t i = 0; i < book.symbol_count(); ++i) {
    const auto& a = book.entry(i);
    if (!a || a->empty()) continue;
    for (std::size_t j = i + 1; j < book.symbol_count(); ++j) {
      const auto& b = book.entry(j);
      if (!b || b->empty()) continue;
      const std::string pair = symbol_string(i, k) + " and " + symbol_string(j, k);
      if (*a == *b) {
        out.push_back({Violation::Kind::DuplicateCodeword,
                       pair + " share codeword " + a->to_string()});
      } else if (b->starts_with(*a)) {
        out.push_back({Violation::Kind::PrefixConflict,
                       a->to_string() + " is a prefix of " + b->to_string() + " (" + pair + ")"});
      } else if (a->starts_with(*b)) {
        out.push_back({Violation::Kind::PrefixConflict,
                       b->to_string() + " is a prefix of " + a->to_string() + " (" + pair + ")"});
      }
    }
  }
  if (const Rational kraft = book.kraft_sum(); kraft > 1) {
    out.push_back({Violation::Kind::KraftExceeded, "Kraft sum " + to_string(kraft) + " > 1"});
  }
  return out;
}

CodeStats code_stats(const Codebook& book, const FrequencyTable& freqs, const CostModel& model) {
  if (book.symbol_bits() != freqs.symbol_bits()) {
    throw DataError("codebook width " + std::to_string(book.symbol_bits()) +
                    " does not match frequency table width " + std::to_string(freqs.symbol_bits()));
  }
  const FrequencyTable p = normalize(freqs);
  CodeStats s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.weight(i) == 0) continue;
    const BitString& cw = book.codeword(i);
    s.expected_zeros += p.weight(i) * cw.count_zeros();
    s.expected_ones += p.weight(i) * cw.count_ones();
  }
  s.expected_length = s.expected_zeros + s.expected_ones;
  s.expected_cost = s.expected_zeros * model.alpha0() + s.expected_ones * model.alpha1();
  return s;
}

std::optional<Rational> crossover_ratio(const CodeStats& a, const CodeStats& b) {
  if (a.expected_zeros == b.expected_zeros) return std::nullopt;
  return Rational((a.expected_ones - b.expected_ones) / (b.expected_zeros - a.expected_zeros));
}

Codebook table1_codebook() {
  static constexpr std::array<const char*, 16> kCodewords = {
      "111",  "0101", "1100", "1101", "1011", "0100",  "00001", "0110",
      "0011", "0010", "1001", "0001", "1010", "00000", "1000",  "0111"};
  std::vector<BitString> cws;
  for (const char* c : kCodewords) cws.push_back(BitString::from_string(c));
  return Codebook(4, std::move(cws));
}

FrequencyTable approximate_pattern_frequencies() {
  FrequencyTable t(4);
  t.set_weight(0, Rational(55, 100));
  for (std::size_t i = 1; i < 16; ++i) t.set_weight(i, Rational(3, 100));
  return t;
}

Codebook parse_codebook(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string word, code, extra;
    if (!(fields >> word)) continue;
    if (!(fields >> code) || (fields >> extra) ||
        word.find_first_not_of("01") != std::string::npos) {
      throw DataError("codebook line " + std::to_string(lineno) +
                      ": expected '<dataword> <codeword>'");
    }
    rows.emplace_back(word, code);
  }
  if (rows.empty()) throw DataError("codebook is empty");

  Codebook book(static_cast<unsigned>(rows.front().first.size()));
  std::vector<bool> seen(book.symbol_count(), false);
  for (const auto& [word, code] : rows) {
    if (word.size() != book.symbol_bits()) throw DataError("codebook mixes dataword widths");
    const std::size_t sym = std::stoul(word, nullptr, 2);
    if (seen[sym]) throw DataError("codebook repeats dataword " + word);
    seen[sym] = true;
    book.set(sym, BitString::from_string(code));
  }
  return book;
}

Codebook read_codebook(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open codebook " + path.string());
  return parse_codebook(in);
}

void write_codebook(std::ostream& out, const Codebook& book) {
  for (std::size_t i = 0; i < book.symbol_count(); ++i) {
    if (const auto& e = book.entry(i)) {
      out << symbol_string(i, book.symbol_bits()) << ' ' << e->to_string() << '\n';
    }
  }
}

void write_codebook(const std::filesystem::path& path, const Codebook& book) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write codebook " + path.string());
  write_codebook(out, book);
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace avlc
