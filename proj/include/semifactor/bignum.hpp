#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace semifactor {

/// Exact nonnegative counts. Backed by GMP; negative values never arise from
/// the counting code and are rejected by `parse_count`.
using BigCount = mpz_class;

/// Exact ratio, always kept in lowest terms with a positive denominator.
using Rational = mpq_class;

std::string to_decimal(const BigCount& value);
BigCount parse_count(std::string_view text);

/// "p/q", or just "p" when the denominator is one.
std::string to_string(const Rational& value);
Rational make_rational(std::int64_t num, std::int64_t den);

BigCount factorial(std::uint64_t n);
BigCount binomial(std::uint64_t n, std::uint64_t r);
BigCount multinomial(std::uint64_t total, std::span<const std::int64_t> parts);
BigCount falling_factorial(std::uint64_t n, std::uint64_t x);
BigCount pow(const BigCount& base, std::uint64_t exponent);

/// Natural logarithm of a positive integer, accurate to long double rounding.
long double ln(const BigCount& value);
long double ln(const Rational& value);

long double to_long_double(const Rational& value);

}  // namespace semifactor
