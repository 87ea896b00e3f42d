#include "avlc/code_builder.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "avlc/errors.hpp"

namespace avlc {
namespace {

using Wide = __int128;

constexpr int kMaxDepth = kMaxEnumerableLeaves - 1;
constexpr int kBucketStride = kMaxDepth + 1;

// Frequencies and costs rescaled to integers. Expected cost of a code is
// sum(weight * leaf_cost) / (total_weight * cost_denominator).
struct ScaledProblem {
  std::vector<std::int64_t> weights;      // by symbol
  std::vector<std::int64_t> prefix;       // prefix sums of weights sorted descending
  std::int64_t zero_cost;
  std::int64_t one_cost;

  std::int64_t total_weight;
  std::int64_t cost_denominator;

  ScaledProblem(std::span<const Rational> freqs, const CostModel& model) {
    BigInt lcm = 1;
    for (const auto& w : freqs) {
      if (w < 0) throw DataError("negative frequency weight");
      lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(w));
    }
    BigInt total = 0;
    for (const auto& w : freqs) {
      const Rational scaled = w * lcm;
      weights.push_back(to_int64(boost::multiprecision::numerator(scaled), "scaled frequency"));
      total += weights.back();
    }
    if (total == 0) throw EmptyDistributionError("frequency table has zero total weight");
    total_weight = to_int64(total, "total scaled frequency");

    std::vector<std::int64_t> sorted = weights;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    prefix.assign(sorted.size() + 1, 0);
    std::partial_sum(sorted.begin(), sorted.end(), prefix.begin() + 1);

    const ScaledCosts c = scale(model);
    zero_cost = c.zero;
    one_cost = c.one;
    cost_denominator = c.denominator;
  }

  Rational expected(Wide total) const {
    // Totals are nonnegative.
    const auto u = static_cast<unsigned __int128>(total);
    const BigInt num = (BigInt(static_cast<std::uint64_t>(u >> 64)) << 64) +
                       BigInt(static_cast<std::uint64_t>(u));
    return Rational(num, BigInt(total_weight) * cost_denominator);
  }

  std::int64_t leaf_cost(int depth, int zeros) const {
    return zeros * zero_cost + (depth - zeros) * one_cost;
  }
};

// Flattened view of a shape. Internal nodes are numbered in preorder; leaves
// left to right, so every subtree covers a contiguous leaf range.
struct ShapeLayout {
  struct Internal {
    int leaf_begin;
    int leaf_mid;
    int leaf_end;
    bool symmetric;  // both children have the same shape
  };
  std::vector<Internal> internals;
  std::vector<int> depths;
  // Path of each leaf: (internal index, went_left) from the root.
  std::vector<std::vector<std::pair<int, bool>>> paths;

  explicit ShapeLayout(const TreeShape& shape) {
    std::vector<std::pair<int, bool>> path;
    walk(shape, path);
  }

 private:
  void walk(const TreeShape& s, std::vector<std::pair<int, bool>>& path) {
    if (s.is_leaf()) {
      depths.push_back(static_cast<int>(path.size()));
      paths.push_back(path);
      return;
    }
    const int idx = static_cast<int>(internals.size());
    internals.push_back({static_cast<int>(depths.size()), 0, 0, s.left() == s.right()});
    path.emplace_back(idx, true);
    walk(s.left(), path);
    internals[idx].leaf_mid = static_cast<int>(depths.size());
    path.back().second = false;
    walk(s.right(), path);
    internals[idx].leaf_end = static_cast<int>(depths.size());
    path.pop_back();
  }
};

// A labeling sets bit j of the mask to the label of internal node j's left
// edge; the right edge carries the complement.
using Labeling = std::uint32_t;

bool edge_bit(Labeling mask, int node, bool left) {
  const bool b = (mask >> node) & 1u;
  return left ? b : !b;
}

std::vector<BitString> leaf_codewords(const ShapeLayout& layout, Labeling mask) {
  std::vector<BitString> out;
  out.reserve(layout.paths.size());
  for (const auto& path : layout.paths) {
    BitString cw;
    for (auto [node, left] : path) cw.push_back(edge_bit(mask, node, left));
    out.push_back(std::move(cw));
  }
  return out;
}

// Minimal sum over pairings of weights with costs: heaviest weight with the
// cheapest cost.
Wide rearrangement_total(std::vector<std::int64_t> weights, std::vector<std::int64_t> costs) {
  std::sort(weights.begin(), weights.end(), std::greater<>());
  std::sort(costs.begin(), costs.end());
  Wide t = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) t += static_cast<Wide>(weights[i]) * costs[i];
  return t;
}

struct ShapeOptimum {
  Wide total;
  std::vector<Labeling> tied;  // every labeling reaching total, when collected
};

// Scans every labeling of the shape. Labels of a node whose children have
// the same shape are fixed to 0: flipping them only swaps two isomorphic
// subtrees, which the labelings inside those subtrees already cover.
ShapeOptimum scan_labelings(const ShapeLayout& layout, const ScaledProblem& prob, bool collect) {
  const int leaves = static_cast<int>(layout.depths.size());

  std::vector<int> free_nodes;
  for (int j = 0; j < static_cast<int>(layout.internals.size()); ++j) {
    if (!layout.internals[j].symmetric) free_nodes.push_back(j);
  }

  // Mask 0: every left edge is 0, so a leaf's zero count is its left turns.
  std::vector<int> zeros(static_cast<std::size_t>(leaves), 0);
  for (int i = 0; i < leaves; ++i) {
    for (auto [node, left] : layout.paths[i]) zeros[i] += left ? 1 : 0;
  }

  std::array<int, kBucketStride * kBucketStride> hist{};
  std::array<bool, kBucketStride> depth_used{};
  for (int i = 0; i < leaves; ++i) {
    ++hist[layout.depths[i] * kBucketStride + zeros[i]];
    depth_used[layout.depths[i]] = true;
  }

  struct Bucket {
    int index;
    std::int64_t cost;
  };
  std::vector<Bucket> order;
  for (int d = 0; d < kBucketStride; ++d) {
    if (!depth_used[d]) continue;
    for (int z = 0; z <= d; ++z) order.push_back({d * kBucketStride + z, prob.leaf_cost(d, z)});
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const Bucket& a, const Bucket& b) { return a.cost < b.cost; });

  auto evaluate = [&]() {
    Wide total = 0;
    int pos = 0;
    for (const Bucket& b : order) {
      const int cnt = hist[b.index];
      if (cnt == 0) continue;
      total += static_cast<Wide>(b.cost) * (prob.prefix[pos + cnt] - prob.prefix[pos]);
      pos += cnt;
      if (pos == leaves) break;
    }
    return total;
  };

  auto shift_leaf = [&](int leaf, int delta) {
    const int d = layout.depths[leaf];
    --hist[d * kBucketStride + zeros[leaf]];
    zeros[leaf] += delta;
    ++hist[d * kBucketStride + zeros[leaf]];
  };

  Labeling mask = 0;
  ShapeOptimum best{evaluate(), {}};
  if (collect) best.tied.push_back(mask);

  const std::uint64_t steps = std::uint64_t{1} << free_nodes.size();
  for (std::uint64_t g = 1; g < steps; ++g) {
    const int node = free_nodes[static_cast<std::size_t>(std::countr_zero(g))];
    const auto& in = layout.internals[node];
    const bool was_zero = ((mask >> node) & 1u) == 0;
    // Left edge 0 -> 1 removes a zero from every left leaf, adds one to every right leaf.
    const int left_delta = was_zero ? -1 : 1;
    for (int l = in.leaf_begin; l < in.leaf_mid; ++l) shift_leaf(l, left_delta);
    for (int l = in.leaf_mid; l < in.leaf_end; ++l) shift_leaf(l, -left_delta);
    mask ^= Labeling{1} << node;

    const Wide total = evaluate();
    if (total < best.total) {
      best.total = total;
      if (collect) best.tied.assign(1, mask);
    } else if (collect && total == best.total) {
      best.tied.push_back(mask);
    }
  }
  return best;
}

// Lexicographically smallest (in data-word order) assignment of codewords to
// symbols among those reaching `target`. Greedy is exact here: with a
// prefix-free code the first differing codeword decides the concatenation
// order.
std::vector<BitString> smallest_assignment(const std::vector<BitString>& codewords,
                                           const std::vector<std::int64_t>& costs,
                                           const std::vector<std::int64_t>& weights, Wide target) {
  const std::size_t n = codewords.size();
  std::vector<std::size_t> by_string(n);
  std::iota(by_string.begin(), by_string.end(), 0);
  std::sort(by_string.begin(), by_string.end(),
            [&](std::size_t a, std::size_t b) { return codewords[a] < codewords[b]; });

  std::vector<bool> used(n, false);
  std::vector<BitString> out(n);
  Wide spent = 0;
  for (std::size_t sym = 0; sym < n; ++sym) {
    std::vector<std::int64_t> rest_weights(weights.begin() + static_cast<std::ptrdiff_t>(sym) + 1,
                                           weights.end());
    bool placed = false;
    for (std::size_t leaf : by_string) {
      if (used[leaf]) continue;
      std::vector<std::int64_t> rest_costs;
      rest_costs.reserve(n);
      for (std::size_t other = 0; other < n; ++other) {
        if (!used[other] && other != leaf) rest_costs.push_back(costs[other]);
      }
      const Wide here = static_cast<Wide>(weights[sym]) * costs[leaf];
      if (spent + here + rearrangement_total(rest_weights, std::move(rest_costs)) == target) {
        used[leaf] = true;
        spent += here;
        out[sym] = codewords[leaf];
        placed = true;
        break;
      }
    }
    if (!placed) throw std::logic_error("no optimal completion for codeword assignment");
  }
  return out;
}

BitString concatenate(const std::vector<BitString>& cws) {
  BitString out;
  for (const auto& c : cws) out.append(c);
  return out;
}

void check_leaves(const TreeShape& shape, std::size_t symbols) {
  if (static_cast<std::size_t>(shape.leaf_count()) != symbols) {
    throw DataError("shape has " + std::to_string(shape.leaf_count()) + " leaves but there are " +
                    std::to_string(symbols) + " symbols");
  }
  if (shape.leaf_count() > kMaxEnumerableLeaves) {
    throw UnsupportedSizeError("code search supports at most " +
                               std::to_string(kMaxEnumerableLeaves) + " symbols");
  }
}

ShapeCode finish(const TreeShape& shape, const ScaledProblem& prob) {
  const ShapeLayout layout(shape);
  const ShapeOptimum opt = scan_labelings(layout, prob, /*collect=*/true);

  std::optional<std::vector<BitString>> best;
  BitString best_concat;
  for (Labeling mask : opt.tied) {
    const auto cws = leaf_codewords(layout, mask);
    std::vector<std::int64_t> costs;
    for (const auto& c : cws) {
      costs.push_back(prob.leaf_cost(static_cast<int>(c.size()), static_cast<int>(c.count_zeros())));
    }
    auto assigned = smallest_assignment(cws, costs, prob.weights, opt.total);
    BitString concat = concatenate(assigned);
    if (!best || concat < best_concat) {
      best = std::move(assigned);
      best_concat = std::move(concat);
    }
  }
  return {std::move(*best), prob.expected(opt.total)};
}

BuiltCode to_built(const TreeShape& shape, ShapeCode code, const FrequencyTable& freqs,
                   const CostModel& model) {
  Codebook book(freqs.symbol_bits(), std::move(code.codewords));
  CodeStats stats = code_stats(book, freqs, model);
  if (stats.expected_cost != code.expected_cost) {
    throw std::logic_error("search cost disagrees with codebook statistics");
  }
  return {std::move(book), std::move(stats), shape};
}

}  // namespace

ShapeCode optimal_code_for_weights(const TreeShape& shape, std::span<const Rational> weights,
                                   const CostModel& model) {
  check_leaves(shape, weights.size());
  return finish(shape, ScaledProblem(weights, model));
}

BuiltCode optimal_codebook_for_shape(const TreeShape& shape, const FrequencyTable& freqs,
                                     const CostModel& model) {
  return to_built(shape, optimal_code_for_weights(shape, freqs.weights(), model), freqs, model);
}

BuiltCode build_codebook(const FrequencyTable& freqs, const CostModel& model,
                         const DepthConstraint& constraint, const BuildOptions& options) {
  if (freqs.size() > static_cast<std::size_t>(kMaxEnumerableLeaves)) {
    throw UnsupportedSizeError("code search supports at most " +
                               std::to_string(kMaxEnumerableLeaves) + " symbols");
  }
  const auto shapes = enumerate_shapes(static_cast<int>(freqs.size()), constraint);
  if (shapes.empty()) {
    throw NoFeasibleCodeError("no code tree with " + std::to_string(freqs.size()) +
                              " leaves has every codeword length in [" +
                              std::to_string(constraint.min_depth) + "," +
                              std::to_string(constraint.max_depth) + "]");
  }
  const ScaledProblem prob(freqs.weights(), model);

  struct Best {
    Wide total;
    std::size_t index;
  };
  auto scan_range = [&](std::size_t first, std::size_t stride) {
    std::optional<Best> best;
    for (std::size_t i = first; i < shapes.size(); i += stride) {
      const Wide t = scan_labelings(ShapeLayout(shapes[i]), prob, false).total;
      if (!best || t < best->total) best = Best{t, i};
    }
    return best;
  };

  const std::size_t workers =
      std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(shapes.size(), 1));
  std::vector<std::optional<Best>> partial(workers);
  if (workers == 1) {
    partial[0] = scan_range(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] { partial[w] = scan_range(w, workers); });
    }
  }

  std::optional<Best> best;
  for (const auto& p : partial) {
    if (p && (!best || p->total < best->total ||
              (p->total == best->total && p->index < best->index))) {
      best = p;
    }
  }
  const TreeShape& winner = shapes[best->index];
  return to_built(winner, finish(winner, prob), freqs, model);
}

}  // namespace avlc
