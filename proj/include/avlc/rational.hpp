#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace avlc {

/// Exact arbitrary-precision rational used for every cost and probability.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "2", "0.55", "1/3" or "-1.5" into an exact rational.
/// Throws DataError on anything else.
Rational parse_rational(std::string_view text);

/// "p" when the value is an integer, "p/q" otherwise (always reduced).
std::string to_string(const Rational& value);

/// Fixed-point decimal rendering rounded half away from zero.
std::string to_decimal(const Rational& value, int digits);

/// Least common multiple of the denominators.
BigInt common_denominator(const Rational& a, const Rational& b);

/// Narrows an integer to int64, throwing DataError when it does not fit.
std::int64_t to_int64(const BigInt& value, std::string_view what);

}  // namespace avlc
