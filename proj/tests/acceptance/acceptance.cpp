// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "avlc/code_builder.hpp"
#include "avlc/codebook.hpp"
#include "avlc/corpus.hpp"
#include "avlc/eval.hpp"
#include "avlc/report.hpp"
#include "avlc/tree_shape.hpp"
#include "avlc/vlc_codec.hpp"
#include "../oracles.hpp"
#include "../test_support.hpp"

using namespace avlc;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void run(int id, const char* title, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("%s [%d] %s: %s (%.3f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

const CostModel kTwoOne(2, 1);

Codebook book_of(unsigned k, std::initializer_list<const char*> cws) {
  std::vector<BitString> v;
  for (const char* c : cws) v.push_back(BitString::from_string(c));
  return Codebook(k, std::move(v));
}

Outcome structural_counts() {
  const std::uint64_t c4 = count_shapes(4);
  const auto e4 = enumerate_shapes(4).size();
  const std::uint64_t c16 = count_shapes(16);
  const auto t0 = Clock::now();
  const auto e16 = enumerate_shapes(16).size();
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::ostringstream d;
  d << "count(4)=" << c4 << " enum(4)=" << e4 << " count(16)=" << c16 << " enum(16)=" << e16
    << " in " << secs << " s";
  return {c4 == 2 && e4 == 2 && c16 == 10905 && e16 == 10905 && secs < 60, d.str()};
}

Outcome table1_validates() {
  static const char* kExpected[16] = {"111",  "0101", "1100", "1101", "1011", "0100",
                                      "00001", "0110", "0011", "0010", "1001", "0001",
                                      "1010", "00000", "1000", "0111"};
  const auto t0 = Clock::now();
  const Codebook t = table1_codebook();
  const bool valid = validate(t).empty();
  const Rational kraft = t.kraft_sum();
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  bool exact = t.symbol_count() == 16;
  for (std::size_t s = 0; exact && s < 16; ++s) exact = t.codeword(s).to_string() == kExpected[s];
  std::ostringstream d;
  d << "entries " << (exact ? "exact" : "MISMATCH") << ", prefix-free " << (valid ? "yes" : "no")
    << ", kraft " << to_string(kraft) << ", " << ms << " ms";
  return {exact && valid && kraft == 1 && ms < 1.0, d.str()};
}

Outcome four_symbol_example() {
  const FrequencyTable f(2, {Rational(1, 10), Rational(2, 10), Rational(3, 10), Rational(4, 10)});
  // Codes realizing the reported per-symbol averages (0.9, 1.0) and (0.7, 1.3).
  const CodeStats a = code_stats(book_of(2, {"101", "100", "11", "0"}), f, kTwoOne);
  const CodeStats b = code_stats(book_of(2, {"00", "01", "10", "11"}), f, kTwoOne);
  const auto cross = crossover_ratio(a, b);
  const Rational built21 = build_codebook(f, kTwoOne, DepthConstraint(1, 3)).stats.expected_cost;
  const Rational built11 = build_codebook(f, CostModel(1, 1), DepthConstraint(1, 3)).stats.expected_cost;
  std::ostringstream d;
  d << "huffman-shape " << to_string(a.expected_cost) << ", balanced " << to_string(b.expected_cost)
    << ", crossover " << (cross ? to_string(*cross) : "none") << ", built (2,1) "
    << to_string(built21) << ", built (1,1) " << to_string(built11);
  const bool ok = a.expected_cost == Rational(28, 10) && b.expected_cost == Rational(27, 10) &&
                  cross == Rational(3, 2) && built21 == Rational(27, 10) && built11 == Rational(19, 10);
  return {ok, d.str()};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(20240601);
  int checked = 0, mismatches = 0;
  for (int n = 2; n <= 8; ++n) {
    const auto shapes = enumerate_shapes(n);
    for (int trial = 0; trial < 100; ++trial) {
      const TreeShape& shape = shapes[rng() % shapes.size()];
      std::vector<std::int64_t> w(static_cast<std::size_t>(n));
      std::int64_t total = 0;
      for (auto& x : w) total += (x = static_cast<std::int64_t>(rng() % 1000));
      if (total == 0) total += ++w[0];
      const std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 10);
      std::int64_t c0 = static_cast<std::int64_t>(rng() % 21);
      const std::int64_t c1 = static_cast<std::int64_t>(rng() % 21);
      if (c0 == 0 && c1 == 0) c0 = 1;
      const CostModel model(Rational(c0, q), Rational(c1, q));

      Rational got;
      if (n == 2 || n == 4 || n == 8) {
        std::vector<Rational> weights;
        for (auto x : w) weights.emplace_back(x, total);
        const unsigned k = n == 2 ? 1 : (n == 4 ? 2 : 3);
        got = optimal_codebook_for_shape(shape, FrequencyTable(k, weights), model).stats.expected_cost;
      } else {
        std::vector<Rational> weights(w.begin(), w.end());
        got = optimal_code_for_weights(shape, weights, model).expected_cost;
      }
      const Rational want(oracle::brute_force_min(shape, w, c0, c1), total * q);
      ++checked;
      if (got != want) ++mismatches;
    }
  }
  std::ostringstream d;
  d << checked << " instances over 2..8 leaves, " << mismatches << " mismatches";
  return {mismatches == 0 && checked == 700, d.str()};
}

Outcome round_trip() {
  std::mt19937_64 rng(99);
  std::vector<Codebook> books = {table1_codebook()};
  const auto s16 = enumerate_shapes(16);
  const auto s4 = enumerate_shapes(4);
  const auto s2 = enumerate_shapes(2);
  for (int i = 0; i < 20; ++i) {
    if (i < 16) books.push_back(test::random_codebook(rng, 4, s16));
    else if (i < 18) books.push_back(test::random_codebook(rng, 2, s4));
    else books.push_back(test::random_codebook(rng, 1, s2));
  }
  std::uint64_t blocks = 0, failed = 0, encoded = 0;
  for (const Codebook& book : books) {
    const VlcCodec codec(book);
    for (int i = 0; i < 100000; ++i) {
      // Alternate uniform and zero-heavy lines so both the raw and the
      // encoded paths are exercised.
      const Block b = i % 2 ? test::random_block(rng) : test::skewed_block(rng, 0.9);
      const EncodedBlock e = codec.encode(b);
      encoded += e.encoded;
      ++blocks;
      if (!(codec.decode(e) == b)) ++failed;
    }
  }
  std::ostringstream d;
  d << books.size() << " codebooks, " << blocks << " lines (" << encoded << " encoded), " << failed
    << " failures";
  return {failed == 0, d.str()};
}

Outcome cost_ordering() {
  const auto corpus = synthetic_zero_heavy(10000, Rational(55, 100), 1);
  const FrequencyTable hist = pattern_histogram(corpus, 4);
  const BuiltCode built = build_codebook(hist, kTwoOne, DepthConstraint(3, 5));
  const std::vector<CodecId> codecs = {CodecId::Vlc, CodecId::Fnw, CodecId::Fpc, CodecId::Bdi,
                                       CodecId::FpcBdi};
  const CostReport r = run_eval(corpus, codecs, kTwoOne, built.book);
  const Rational vlc = r.find(CodecId::Vlc)->total_cost;
  bool lower = true;
  std::ostringstream d;
  d << "per line: vlc " << to_decimal(vlc / 10000, 2);
  for (CodecId c : {CodecId::Fnw, CodecId::Fpc, CodecId::Bdi, CodecId::FpcBdi}) {
    const Rational other = r.find(c)->total_cost;
    lower = lower && vlc < other;
    d << ", " << to_string(c) << ' ' << to_decimal(other / 10000, 2);
  }

  const std::vector<CorpusBlock> zeros(100, CorpusBlock{Block::filled(0), 64});
  const std::vector<CodecId> pair = {CodecId::Vlc, CodecId::Fnw};
  const CostReport z = run_eval(zeros, pair, kTwoOne, table1_codebook());
  const Rational ratio = z.find(CodecId::Vlc)->total_cost / z.find(CodecId::Fnw)->total_cost;
  d << "; all-zero vlc/fnw " << to_string(ratio);
  return {lower && ratio == Rational(385, 576), d.str()};
}

Outcome optimizer_dominance() {
  const FrequencyTable approx = approximate_pattern_frequencies();
  const Rational built = build_codebook(approx, kTwoOne, DepthConstraint(3, 5)).stats.expected_cost;
  const Rational fixed = code_stats(table1_codebook(), approx, kTwoOne).expected_cost;
  std::ostringstream d;
  d << "built " << to_string(built) << " <= fixed " << to_string(fixed);
  return {built <= fixed, d.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "avlc_acceptance";
  fs::create_directories(dir);
  const auto corpus = synthetic_zero_heavy(5000, Rational(55, 100), 7);
  const std::vector<CodecId> codecs = {CodecId::Vlc, CodecId::Fnw, CodecId::Fpc,
                                       CodecId::Bdi, CodecId::FpcBdi, CodecId::Raw};
  std::vector<std::string> outputs;
  for (unsigned workers : {1u, 2u, 4u, 7u}) {
    BuildOptions bo;
    bo.workers = workers;
    const BuiltCode built =
        build_codebook(pattern_histogram(corpus, 4), kTwoOne, DepthConstraint(3, 5), bo);
    EvalOptions eo;
    eo.workers = workers;
    const CostReport r = run_eval(corpus, codecs, kTwoOne, built.book, eo);
    const fs::path csv = dir / ("report_w" + std::to_string(workers) + ".csv");
    const fs::path txt = dir / ("report_w" + std::to_string(workers) + ".txt");
    emit_report(r, ReportFormat::Csv, csv);
    emit_report(r, ReportFormat::Text, txt);
    outputs.push_back(slurp(csv) + slurp(txt));
  }
  bool same = !outputs.front().empty();
  for (const auto& o : outputs) same = same && o == outputs.front();
  return {same, same ? "reports byte-identical for 1, 2, 4 and 7 workers" : "reports differ"};
}

}  // namespace

int main() {
  run(1, "structural counts", structural_counts);
  run(2, "fixed nibble code validates", table1_validates);
  run(3, "four-symbol example", four_symbol_example);
  run(4, "oracle equivalence", [] {
    const auto t0 = Clock::now();
    Outcome o = oracle_equivalence();
    if (Clock::now() - t0 > std::chrono::minutes(5)) o = {false, o.detail + ", over 5 minutes"};
    return o;
  });
  run(5, "codec round trip", round_trip);
  run(6, "cost ordering", cost_ordering);
  run(7, "optimizer dominance", optimizer_dominance);
  run(8, "determinism", determinism);
  std::printf("%s: %d failed\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
