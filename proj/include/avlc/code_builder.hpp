#pragma once

#include <span>
#include <vector>

#include "avlc/codebook.hpp"
#include "avlc/cost_model.hpp"
#include "avlc/frequency_table.hpp"
#include "avlc/tree_shape.hpp"

namespace avlc {

struct BuiltCode {
  Codebook book;
  CodeStats stats;
  TreeShape shape;
};

struct BuildOptions {
  /// Threads used to scan candidate shapes; the result does not depend on it.
  unsigned workers = 1;
};

/// Codewords by symbol and the normalized expected cost per symbol.
struct ShapeCode {
  std::vector<BitString> codewords;
  Rational expected_cost;
};

/// Core search behind optimal_codebook_for_shape for any symbol count equal
/// to the shape's leaf count; weights need not be normalized.
ShapeCode optimal_code_for_weights(const TreeShape& shape, std::span<const Rational> weights,
                                   const CostModel& model);

/// Minimum expected write cost code whose codewords are the root-to-leaf
/// paths of shape, over every 0/1 edge labeling and every symbol-to-leaf
/// assignment. Ties resolve to the lexicographically smallest concatenation
/// of codewords in data-word order.
///
/// Throws DataError when the leaf count differs from the symbol count and
/// EmptyDistributionError when every weight is zero.
BuiltCode optimal_codebook_for_shape(const TreeShape& shape, const FrequencyTable& freqs,
                                     const CostModel& model);

/// Cheapest code over every shape admitted by the depth constraint. Ties go
/// to the earliest shape in enumeration order, then as in
/// optimal_codebook_for_shape. Throws NoFeasibleCodeError when no shape fits
/// the constraint.
BuiltCode build_codebook(const FrequencyTable& freqs, const CostModel& model,
                         const DepthConstraint& constraint, const BuildOptions& options = {});

}  // namespace avlc
