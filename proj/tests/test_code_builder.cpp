#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "doctest.h"

#include "avlc/code_builder.hpp"
#include "avlc/codebook.hpp"
#include "avlc/errors.hpp"
#include "oracles.hpp"

using namespace avlc;

namespace {

const CostModel kTwoOne(2, 1);
const CostModel kSymmetric(1, 1);

FrequencyTable fig1_freqs() {
  return FrequencyTable(2, {Rational(1, 10), Rational(2, 10), Rational(3, 10), Rational(4, 10)});
}

Codebook book_of(unsigned k, std::initializer_list<const char*> cws) {
  std::vector<BitString> v;
  for (const char* c : cws) v.push_back(BitString::from_string(c));
  return Codebook(k, std::move(v));
}

const TreeShape kChain4 = TreeShape::parse("(.(.(..)))");
const TreeShape kBalanced4 = TreeShape::parse("((..)(..))");

}  // namespace

TEST_CASE("built-in nibble code") {
  const Codebook t = table1_codebook();
  CHECK(t.symbol_bits() == 4);
  CHECK(t.codeword(0b0000).to_string() == "111");
  CHECK(t.codeword(0b1101).to_string() == "00000");
  CHECK(t.codeword(0b0110).to_string() == "00001");
  CHECK(t.kraft_sum() == Rational(1, 8) + Rational(13, 16) + Rational(2, 32));
  CHECK(t.kraft_sum() == 1);
  CHECK(validate(t).empty());
  CHECK(read_codebook(AVLC_DATA_DIR "/table1.codebook") == t);
}

TEST_CASE("validate reports structural problems") {
  {
    Codebook b(1);
    b.set(0, BitString::from_string("0"));
    b.set(1, BitString::from_string("01"));
    const auto v = validate(b);
    REQUIRE(v.size() == 1);
    CHECK(v[0].kind == Violation::Kind::PrefixConflict);
  }
  {
    Codebook b(2);
    b.set(0, BitString::from_string("0"));
    b.set(1, BitString::from_string("1"));
    b.set(2, BitString::from_string("10"));
    const auto v = validate(b);
    auto has = [&](Violation::Kind k) {
      return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == k; });
    };
    CHECK(has(Violation::Kind::MissingSymbol));
    CHECK(has(Violation::Kind::PrefixConflict));
    CHECK(has(Violation::Kind::KraftExceeded));
  }
  auto kinds = [](const Codebook& b) {
    std::vector<Violation::Kind> k;
    for (const auto& v : validate(b)) k.push_back(v.kind);
    return k;
  };
  auto contains = [](const std::vector<Violation::Kind>& ks, Violation::Kind k) {
    return std::find(ks.begin(), ks.end(), k) != ks.end();
  };
  CHECK(contains(kinds(book_of(1, {"1", "1"})), Violation::Kind::DuplicateCodeword));
  CHECK(contains(kinds(book_of(1, {"", "1"})), Violation::Kind::EmptyCodeword));
  // Incomplete but prefix-free is valid.
  CHECK(validate(book_of(1, {"00", "1"})).empty());
}

TEST_CASE("code_stats on the two four-symbol codes") {
  // Chain shape labeled so that zeros average 0.9 and ones 1.0.
  const Codebook huffman = book_of(2, {"101", "100", "11", "0"});
  const CodeStats a = code_stats(huffman, fig1_freqs(), kTwoOne);
  CHECK(a.expected_zeros == Rational(9, 10));
  CHECK(a.expected_ones == 1);
  CHECK(a.expected_length == Rational(19, 10));
  CHECK(a.expected_cost == Rational(28, 10));

  const Codebook balanced = book_of(2, {"00", "01", "10", "11"});
  const CodeStats b = code_stats(balanced, fig1_freqs(), kTwoOne);
  CHECK(b.expected_zeros == Rational(7, 10));
  CHECK(b.expected_ones == Rational(13, 10));
  CHECK(b.expected_cost == Rational(27, 10));

  CHECK(code_stats(huffman, fig1_freqs(), kSymmetric).expected_cost == Rational(19, 10));
  CHECK(code_stats(balanced, fig1_freqs(), kSymmetric).expected_cost == 2);

  CHECK(crossover_ratio(a, b) == Rational(3, 2));
  CHECK_THROWS_AS(code_stats(table1_codebook(), fig1_freqs(), kTwoOne), DataError);
}

TEST_CASE("code_stats equals expected length under symmetric costs") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    FrequencyTable f(4);
    for (std::size_t s = 0; s < 16; ++s) f.set_weight(s, Rational(static_cast<long>(rng() % 50)));
    f.add(0, 1);
    const CodeStats st = code_stats(table1_codebook(), f, kSymmetric);
    CHECK(st.expected_cost == st.expected_length);
  }
}

TEST_CASE("crossover_ratio") {
  auto stats = [](Rational z, Rational o) { return CodeStats{0, z, o, z + o}; };
  CHECK(crossover_ratio(stats(Rational(9, 10), 1), stats(Rational(7, 10), Rational(13, 10))) ==
        Rational(3, 2));
  CHECK(crossover_ratio(stats(1, Rational(9, 10)), stats(Rational(8, 10), Rational(12, 10))) ==
        Rational(3, 2));
  const CodeStats same = stats(1, 1);
  CHECK_FALSE(crossover_ratio(same, same).has_value());
}

TEST_CASE("optimal code for a fixed shape") {
  const BuiltCode balanced = optimal_codebook_for_shape(kBalanced4, fig1_freqs(), kTwoOne);
  CHECK(balanced.stats.expected_cost == Rational(27, 10));
  CHECK(balanced.stats.expected_zeros == Rational(7, 10));
  CHECK(balanced.stats.expected_ones == Rational(13, 10));

  CHECK(optimal_codebook_for_shape(kChain4, fig1_freqs(), kSymmetric).stats.expected_cost ==
        Rational(19, 10));
  // The exhaustive optimum for the chain shape at alpha = (2, 1) is 2.7.
  const std::vector<std::int64_t> w = {1, 2, 3, 4};
  CHECK(oracle::brute_force_min(kChain4, w, 2, 1) == 27);
  const BuiltCode chain = optimal_codebook_for_shape(kChain4, fig1_freqs(), kTwoOne);
  CHECK(chain.stats.expected_cost == Rational(27, 10));
  CHECK(chain.stats.expected_zeros * 2 + chain.stats.expected_ones == Rational(27, 10));
  CHECK(validate(chain.book).empty());

  CHECK_THROWS_AS(optimal_codebook_for_shape(kChain4, FrequencyTable(3, std::vector<Rational>(8, 1)),
                                             kTwoOne),
                  DataError);
  CHECK_THROWS_AS(optimal_codebook_for_shape(kChain4, FrequencyTable(2), kTwoOne),
                  EmptyDistributionError);
}

TEST_CASE("search matches brute force on small shapes") {
  std::mt19937_64 rng(2024);
  for (int n = 2; n <= 7; ++n) {
    const auto shapes = enumerate_shapes(n);
    for (int trial = 0; trial < 12; ++trial) {
      const TreeShape& shape = shapes[rng() % shapes.size()];
      std::vector<std::int64_t> w;
      std::vector<Rational> weights;
      for (int s = 0; s < n; ++s) {
        w.push_back(static_cast<std::int64_t>(rng() % 20));
        weights.emplace_back(w.back());
      }
      w[0] += 1;
      weights[0] += 1;
      const std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 4);
      const std::int64_t c0 = static_cast<std::int64_t>(rng() % 6);
      const std::int64_t c1 = 1 + static_cast<std::int64_t>(rng() % 6);
      const CostModel model(Rational(c0, q), Rational(c1, q));

      const ShapeCode got = optimal_code_for_weights(shape, weights, model);
      const std::int64_t total = std::accumulate(w.begin(), w.end(), std::int64_t{0});
      CHECK(got.expected_cost == Rational(oracle::brute_force_min(shape, w, c0, c1), total * q));
    }
  }
}

TEST_CASE("optimal assignment is rearrangement-ordered") {
  std::mt19937_64 rng(77);
  const auto shapes = enumerate_shapes(16, DepthConstraint(3, 5));
  for (int trial = 0; trial < 10; ++trial) {
    FrequencyTable f(4);
    for (std::size_t s = 0; s < 16; ++s) f.set_weight(s, Rational(static_cast<long>(rng() % 100)));
    f.add(rng() % 16, 1);
    const CostModel model(static_cast<long>(1 + rng() % 4), static_cast<long>(1 + rng() % 4));
    const BuiltCode c = optimal_codebook_for_shape(shapes[rng() % shapes.size()], f, model);
    for (std::size_t a = 0; a < 16; ++a) {
      for (std::size_t b = 0; b < 16; ++b) {
        if (f.weight(a) > f.weight(b)) {
          CHECK(write_cost(c.book.codeword(a), model) <= write_cost(c.book.codeword(b), model));
        }
      }
    }
    CHECK(validate(c.book).empty());
    CHECK(c.book.kraft_sum() == 1);
  }
}

TEST_CASE("build_codebook on four symbols") {
  const BuiltCode two_one = build_codebook(fig1_freqs(), kTwoOne, DepthConstraint(1, 3));
  CHECK(two_one.stats.expected_cost == Rational(27, 10));
  // Both shapes reach 2.7; ties go to the first shape in enumeration order.
  CHECK(two_one.shape == kChain4);

  CHECK(build_codebook(fig1_freqs(), kSymmetric, DepthConstraint(1, 3)).stats.expected_cost ==
        Rational(19, 10));

  const FrequencyTable uniform(2, {1, 1, 1, 1});
  const BuiltCode u = build_codebook(uniform, kSymmetric, DepthConstraint(2, 2));
  CHECK(u.stats.expected_cost == 2);
  CHECK(u.book == book_of(2, {"00", "01", "10", "11"}));

  CHECK_THROWS_AS(build_codebook(fig1_freqs(), kTwoOne, DepthConstraint(3, 3)), NoFeasibleCodeError);
}

TEST_CASE("build_codebook on the nibble distribution beats the fixed code") {
  const FrequencyTable approx = approximate_pattern_frequencies();
  CHECK(read_frequency_table(AVLC_DATA_DIR "/approx_pattern_freqs.txt") == approx);

  const BuiltCode c = build_codebook(approx, kTwoOne, DepthConstraint(3, 5));
  const CodeStats fixed = code_stats(table1_codebook(), approx, kTwoOne);
  // Both pinned by an exhaustive search over the 97 admissible shapes.
  CHECK(c.stats.expected_cost == Rational(447, 100));
  CHECK(fixed.expected_cost == Rational(459, 100));
  CHECK(c.stats.expected_cost <= fixed.expected_cost);
  CHECK(c.book.codeword(0).to_string() == "111");
  CHECK(validate(c.book).empty());
  CHECK(c.book.kraft_sum() == 1);
  for (const auto& cw : std::vector<std::size_t>{0, 5, 15}) {
    CHECK(c.book.codeword(cw).size() >= 3);
    CHECK(c.book.codeword(cw).size() <= 5);
  }

  BuildOptions par;
  par.workers = 3;
  CHECK(build_codebook(approx, kTwoOne, DepthConstraint(3, 5), par).book == c.book);
}

TEST_CASE("optimal cost is monotone in alpha0") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    FrequencyTable f(2);
    for (std::size_t s = 0; s < 4; ++s) f.set_weight(s, Rational(static_cast<long>(1 + rng() % 30)));
    Rational prev = -1;
    for (int a0 = 0; a0 <= 8; ++a0) {
      const Rational cost =
          build_codebook(f, CostModel(Rational(a0, 2), 1), DepthConstraint(1, 3)).stats.expected_cost;
      CHECK(cost >= prev);
      prev = cost;
    }
  }
  const FrequencyTable approx = approximate_pattern_frequencies();
  Rational prev = -1;
  for (const Rational a0 : {Rational(1), Rational(3, 2), Rational(2), Rational(3)}) {
    const Rational cost =
        build_codebook(approx, CostModel(a0, 1), DepthConstraint(3, 5)).stats.expected_cost;
    CHECK(cost >= prev);
    prev = cost;
  }
}

TEST_CASE("permuting frequencies permutes the optimum") {
  std::mt19937_64 rng(31);
  const auto shapes = enumerate_shapes(8);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> w;
    for (int s = 0; s < 8; ++s) w.emplace_back(static_cast<long>(1 + rng() % 1000));
    std::vector<std::size_t> perm(8);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Rational> permuted(8);
    for (std::size_t s = 0; s < 8; ++s) permuted[perm[s]] = w[s];

    const TreeShape& shape = shapes[rng() % shapes.size()];
    const ShapeCode a = optimal_code_for_weights(shape, w, kTwoOne);
    const ShapeCode b = optimal_code_for_weights(shape, permuted, kTwoOne);
    CHECK(a.expected_cost == b.expected_cost);
    // Weights are distinct with high probability; when they are, each
    // symbol's codeword cost moves with it.
    std::vector<Rational> sorted = w;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) {
      for (std::size_t s = 0; s < 8; ++s) {
        CHECK(write_cost(a.codewords[s], kTwoOne) == write_cost(b.codewords[perm[s]], kTwoOne));
      }
    }
  }
}

TEST_CASE("fixed code is shorter than four bits when 0000 dominates") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    FrequencyTable f(4);
    long rest = 0;
    for (std::size_t s = 1; s < 16; ++s) {
      const long w = static_cast<long>(rng() % 100);
      f.set_weight(s, Rational(w));
      rest += w;
    }
    f.set_weight(0, Rational(rest + 1 + static_cast<long>(rng() % 100)));
    CHECK(code_stats(table1_codebook(), f, kSymmetric).expected_length < 4);
  }
}

TEST_CASE("codebook file round trip") {
  std::ostringstream out;
  write_codebook(out, table1_codebook());
  std::istringstream in(out.str());
  CHECK(parse_codebook(in) == table1_codebook());

  std::istringstream partial("# two entries\n00 0\n11 10\n");
  const Codebook p = parse_codebook(partial);
  CHECK(p.symbol_bits() == 2);
  CHECK_FALSE(p.complete());
  std::istringstream bad("00 012\n");
  CHECK_THROWS_AS(parse_codebook(bad), DataError);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(parse_codebook(empty), DataError);
}
