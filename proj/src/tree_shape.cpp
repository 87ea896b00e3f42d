#include "avlc/tree_shape.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "avlc/errors.hpp"

namespace avlc {

TreeShape TreeShape::leaf() {
  static const auto kLeaf = std::make_shared<const Node>(Node{1, 0, nullptr, nullptr});
  return TreeShape(kLeaf);
}

TreeShape TreeShape::node(TreeShape a, TreeShape b) {
  if (b < a) std::swap(a, b);
  const int h = 1 + std::max(a.height(), b.height());
  return TreeShape(std::make_shared<const Node>(
      Node{a.leaf_count() + b.leaf_count(), h, std::move(a.node_), std::move(b.node_)}));
}

namespace {

TreeShape parse_at(std::string_view text, std::size_t& pos) {
  if (pos >= text.size()) throw DataError("truncated tree shape '" + std::string(text) + "'");
  if (text[pos] == '.') {
    ++pos;
    return TreeShape::leaf();
  }
  if (text[pos] != '(') throw DataError("bad tree shape '" + std::string(text) + "'");
  ++pos;
  TreeShape a = parse_at(text, pos);
  TreeShape b = parse_at(text, pos);
  if (pos >= text.size() || text[pos] != ')') {
    throw DataError("bad tree shape '" + std::string(text) + "'");
  }
  ++pos;
  return TreeShape::node(std::move(a), std::move(b));
}

void render(const TreeShape& s, std::string& out) {
  if (s.is_leaf()) {
    out.push_back('.');
    return;
  }
  out.push_back('(');
  render(s.left(), out);
  render(s.right(), out);
  out.push_back(')');
}

void collect_depths(const TreeShape& s, int depth, std::vector<int>& out) {
  if (s.is_leaf()) {
    out.push_back(depth);
    return;
  }
  collect_depths(s.left(), depth + 1, out);
  collect_depths(s.right(), depth + 1, out);
}

}  // namespace

TreeShape TreeShape::parse(std::string_view text) {
  std::size_t pos = 0;
  TreeShape s = parse_at(text, pos);
  if (pos != text.size()) throw DataError("trailing characters in tree shape");
  return s;
}

std::string TreeShape::to_string() const {
  std::string out;
  out.reserve(static_cast<std::size_t>(2 * leaf_count()));
  render(*this, out);
  return out;
}

std::strong_ordering operator<=>(const TreeShape& a, const TreeShape& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.leaf_count() <=> b.leaf_count(); c != 0) return c;
  if (a.is_leaf()) return std::strong_ordering::equal;
  if (auto c = a.left() <=> b.left(); c != 0) return c;
  return a.right() <=> b.right();
}

DepthConstraint::DepthConstraint(int lo, int hi) : min_depth(lo), max_depth(hi) {
  if (lo < 0 || hi < lo) {
    throw UsageError("depth constraint needs 0 <= min <= max, got [" + std::to_string(lo) +
                     "," + std::to_string(hi) + "]");
  }
}

std::vector<int> leaf_depths(const TreeShape& shape) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(shape.leaf_count()));
  collect_depths(shape, 0, out);
  return out;
}

bool satisfies(const TreeShape& shape, const DepthConstraint& constraint) {
  const auto depths = leaf_depths(shape);
  return std::all_of(depths.begin(), depths.end(),
                     [&](int d) { return constraint.admits(d); });
}

namespace {

// Shapes with n leaves whose leaf depths, measured from the subtree root, lie
// in [lo, hi]. Each list is in ascending canonical order, so within equal-size
// siblings index order equals shape order.
class ShapeGenerator {
 public:
  const std::vector<TreeShape>& get(int n, int lo, int hi) {
    lo = std::max(lo, 0);
    hi = std::min(hi, n - 1);
    auto key = std::make_tuple(n, lo, hi);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::vector<TreeShape> out;
    if (lo <= hi) {
      if (n == 1) {
        if (lo == 0) out.push_back(TreeShape::leaf());
      } else if (hi >= 1) {
        for (int i = 1; i <= n / 2; ++i) {
          const auto& small = get(i, lo - 1, hi - 1);
          const auto& large = get(n - i, lo - 1, hi - 1);
          for (std::size_t a = 0; a < small.size(); ++a) {
            for (std::size_t b = (i == n - i ? a : 0); b < large.size(); ++b) {
              out.push_back(TreeShape::node(small[a], large[b]));
            }
          }
        }
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  std::map<std::tuple<int, int, int>, std::vector<TreeShape>> memo_;
};

}  // namespace

std::vector<TreeShape> enumerate_shapes(int leaf_count, std::optional<DepthConstraint> constraint) {
  if (leaf_count < 1) throw UsageError("leaf count must be at least 1");
  if (leaf_count > kMaxEnumerableLeaves) {
    throw UnsupportedSizeError("exhaustive shape enumeration supports at most " +
                               std::to_string(kMaxEnumerableLeaves) + " leaves, got " +
                               std::to_string(leaf_count));
  }
  ShapeGenerator gen;
  const int lo = constraint ? constraint->min_depth : 0;
  const int hi = constraint ? constraint->max_depth : leaf_count - 1;
  return gen.get(leaf_count, lo, hi);
}

std::uint64_t count_shapes(int leaf_count) {
  if (leaf_count < 1) throw UsageError("leaf count must be at least 1");
  std::vector<std::uint64_t> a(static_cast<std::size_t>(leaf_count) + 1, 0);
  a[1] = 1;
  auto mul_add = [&](std::uint64_t acc, std::uint64_t x, std::uint64_t y) {
    std::uint64_t p;
    if (__builtin_mul_overflow(x, y, &p) || __builtin_add_overflow(acc, p, &acc)) {
      throw UnsupportedSizeError("shape count overflows 64 bits");
    }
    return acc;
  };
  for (int n = 2; n <= leaf_count; ++n) {
    std::uint64_t sum = 0;
    for (int i = 1; 2 * i < n; ++i) sum = mul_add(sum, a[i], a[n - i]);
    if (n % 2 == 0) {
      const std::uint64_t h = a[n / 2];
      // h*(h+1)/2 unordered pairs of equal-size subtrees.
      sum = mul_add(sum, h % 2 == 0 ? h / 2 : h, h % 2 == 0 ? h + 1 : (h + 1) / 2);
    }
    a[n] = sum;
  }
  return a[leaf_count];
}

}  // namespace avlc
