#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace avlc {

/// Largest leaf count accepted by enumerate_shapes.
inline constexpr int kMaxEnumerableLeaves = 16;

/// An unordered full binary tree, kept in canonical form: at every internal
/// node the left subtree is <= the right subtree. Shapes are ordered first by
/// leaf count, then by left subtree, then by right subtree (a leaf is the
/// only shape with one leaf). Immutable; subtrees are shared.
class TreeShape {
 public:
  static TreeShape leaf();
  /// Builds a node from two subtrees in either order.
  static TreeShape node(TreeShape a, TreeShape b);
  /// Parses nested-parentheses notation: "." is a leaf, "(LR)" a node.
  /// Non-canonical input is canonicalized.
  static TreeShape parse(std::string_view text);

  bool is_leaf() const { return !node_->left; }
  /// Only valid on internal nodes.
  TreeShape left() const { return TreeShape(node_->left); }
  TreeShape right() const { return TreeShape(node_->right); }
  int leaf_count() const { return node_->leaves; }
  int internal_count() const { return node_->leaves - 1; }
  int height() const { return node_->height; }

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const TreeShape& a, const TreeShape& b);
  friend bool operator==(const TreeShape& a, const TreeShape& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  struct Node {
    int leaves;
    int height;
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };
  explicit TreeShape(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

/// Inclusive bound on every leaf depth (root depth 0).
struct DepthConstraint {
  int min_depth;
  int max_depth;

  /// Throws UsageError unless 0 <= min_depth <= max_depth.
  DepthConstraint(int min_depth, int max_depth);
  bool admits(int depth) const { return depth >= min_depth && depth <= max_depth; }
};

/// Leaf depths in left-to-right order.
std::vector<int> leaf_depths(const TreeShape& shape);

/// True when every leaf depth of shape satisfies the constraint.
bool satisfies(const TreeShape& shape, const DepthConstraint& constraint);

/// Every canonical shape with leaf_count leaves (and, when given, all leaf
/// depths inside the constraint) exactly once, in ascending canonical order.
/// Throws UnsupportedSizeError above kMaxEnumerableLeaves; an unsatisfiable
/// constraint yields an empty list.
std::vector<TreeShape> enumerate_shapes(int leaf_count,
                                        std::optional<DepthConstraint> constraint = {});

/// Number of unordered full binary trees with leaf_count leaves
/// (Wedderburn-Etherington numbers), by recurrence.
std::uint64_t count_shapes(int leaf_count);

}  // namespace avlc
