#include "avlc/cost_model.hpp"

#include <bit>

#include "avlc/block.hpp"
#include "avlc/errors.hpp"

namespace avlc {

CostModel::CostModel(Rational alpha0, Rational alpha1)
    : alpha0_(std::move(alpha0)), alpha1_(std::move(alpha1)) {
  if (alpha0_ < 0 || alpha1_ < 0) {
    throw UsageError("write costs must be nonnegative");
  }
  if (alpha0_ == 0 && alpha1_ == 0) {
    throw UsageError("at least one write cost must be positive");
  }
}

ScaledCosts scale(const CostModel& model) {
  const BigInt den = common_denominator(model.alpha0(), model.alpha1());
  const Rational z = model.alpha0() * den;
  const Rational o = model.alpha1() * den;
  return {to_int64(boost::multiprecision::numerator(z), "scaled alpha0"),
          to_int64(boost::multiprecision::numerator(o), "scaled alpha1"),
          to_int64(den, "cost denominator")};
}

CostBreakdown make_breakdown(const BitCounts& counts, const CostModel& model) {
  CostBreakdown b;
  b.written_zeros = counts.data_zeros;
  b.written_ones = counts.data_ones;
  b.metadata_bits = counts.meta_bits();
  b.flag_bits_cost = model.cost(counts.meta_zeros, counts.meta_ones);
  b.total_cost = model.cost(counts.data_zeros, counts.data_ones) + b.flag_bits_cost;
  return b;
}

Rational write_cost(const BitString& bits, const CostModel& model) {
  return model.cost(bits.count_zeros(), bits.count_ones());
}

BitCounts block_bit_counts(const Block& block) {
  BitCounts c;
  for (std::uint8_t b : block.bytes) c.data_ones += static_cast<std::uint64_t>(std::popcount(b));
  c.data_zeros = Block::kBits - c.data_ones;
  return c;
}

CostBreakdown block_raw_cost(const Block& block, const CostModel& model) {
  return make_breakdown(block_bit_counts(block), model);
}

}  // namespace avlc
