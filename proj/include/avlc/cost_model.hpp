#pragma once

#include <cstdint>

#include "avlc/bitstring.hpp"
#include "avlc/rational.hpp"

namespace avlc {

/// Asymmetric per-bit write costs: writing a 0 costs alpha0, a 1 costs alpha1.
class CostModel {
 public:
  /// Throws UsageError if either cost is negative or both are zero.
  CostModel(Rational alpha0, Rational alpha1);

  const Rational& alpha0() const { return alpha0_; }
  const Rational& alpha1() const { return alpha1_; }

  Rational cost(std::uint64_t zeros, std::uint64_t ones) const {
    return alpha0_ * zeros + alpha1_ * ones;
  }
  const Rational& bit_cost(bool bit) const { return bit ? alpha1_ : alpha0_; }

 private:
  Rational alpha0_;
  Rational alpha1_;
};

/// Costs rescaled to integers sharing one denominator:
/// alpha0 = zero / denominator, alpha1 = one / denominator.
struct ScaledCosts {
  std::int64_t zero;
  std::int64_t one;
  std::int64_t denominator;
};
ScaledCosts scale(const CostModel& model);

/// Bit tallies for one write. Data bits are the stored payload; metadata bits
/// are flags, prefixes or tags that are costed separately.
struct BitCounts {
  std::uint64_t data_zeros = 0;
  std::uint64_t data_ones = 0;
  std::uint64_t meta_zeros = 0;
  std::uint64_t meta_ones = 0;

  std::uint64_t data_bits() const { return data_zeros + data_ones; }
  std::uint64_t meta_bits() const { return meta_zeros + meta_ones; }

  BitCounts& operator+=(const BitCounts& o) {
    data_zeros += o.data_zeros;
    data_ones += o.data_ones;
    meta_zeros += o.meta_zeros;
    meta_ones += o.meta_ones;
    return *this;
  }
  friend bool operator==(const BitCounts&, const BitCounts&) = default;
};

/// total_cost = written_zeros*alpha0 + written_ones*alpha1 + flag_bits_cost.
struct CostBreakdown {
  std::uint64_t written_zeros = 0;
  std::uint64_t written_ones = 0;
  std::uint64_t metadata_bits = 0;
  Rational flag_bits_cost = 0;
  Rational total_cost = 0;
};

CostBreakdown make_breakdown(const BitCounts& counts, const CostModel& model);

/// zeros*alpha0 + ones*alpha1 over the whole string.
Rational write_cost(const BitString& bits, const CostModel& model);

}  // namespace avlc
