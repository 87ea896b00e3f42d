#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace avlc {

/// Ordered bit sequence, stored MSB-first in bytes. Bit 0 is the first
/// emitted/stored bit.
class BitString {
 public:
  BitString() = default;

  /// Parses a string of '0'/'1' characters.
  static BitString from_string(std::string_view text);
  /// The first nbits bits of bytes, MSB-first.
  static BitString from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  bool operator[](std::size_t i) const {
    return (bytes_[i >> 3] >> (7 - (i & 7))) & 1u;
  }

  void push_back(bool bit);
  /// Appends the low `width` bits of value, most significant first.
  void append_bits(std::uint64_t value, unsigned width);
  void append(const BitString& other);

  std::size_t count_ones() const;
  std::size_t count_zeros() const { return size_ - count_ones(); }
  bool starts_with(const BitString& prefix) const;

  std::string to_string() const;
  /// Packed bytes; trailing bits of the last byte are 0.
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

  friend bool operator==(const BitString& a, const BitString& b) {
    return a.size_ == b.size_ && a.bytes_ == b.bytes_;
  }
  /// Lexicographic, '0' < '1', a proper prefix sorts first.
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b);

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t size_ = 0;
};

}  // namespace avlc
