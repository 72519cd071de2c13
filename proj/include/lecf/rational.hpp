#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace lecf {

using BigInt = mpz_class;
using BigCount = mpz_class;

// Always canonical: gcd(num, den) = 1 and den >= 1.
using Rational = mpq_class;

Rational make_rational(const BigInt& numerator, const BigInt& denominator);

// Accepts "p/q" or "p" with an optional leading '-'. No whitespace.
Rational parse_rational(std::string_view text);

// Parses a non-negative decimal integer.
BigInt parse_integer(std::string_view text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

// Narrowing helpers; throw ResourceError when the value does not fit.
std::uint64_t to_u64(const BigInt& value);
std::size_t to_size(const BigInt& value);

BigInt floor(const Rational& value);

} // namespace lecf
