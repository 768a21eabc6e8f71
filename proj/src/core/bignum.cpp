#include "semifactor/bignum.hpp"

#include <cmath>
#include <numeric>

#include "semifactor/error.hpp"

namespace semifactor {

namespace {
constexpr long double kLn2 = 0.693147180559945309417232121458176568L;
}

std::string to_decimal(const BigCount& value) { return value.get_str(10); }

BigCount parse_count(std::string_view text) {
  if (text.empty() ||
      text.find_first_not_of("0123456789") != std::string_view::npos) {
    throw Error(ErrorKind::ParseError,
                "not a nonnegative decimal integer: '" + std::string(text) + "'");
  }
  return BigCount(std::string(text), 10);
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str(10);
  return value.get_num().get_str(10) + "/" + value.get_den().get_str(10);
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorKind::ZeroDenominator, "rational with zero denominator");
  Rational q{mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))};
  q.canonicalize();
  return q;
}

BigCount factorial(std::uint64_t n) {
  BigCount out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

BigCount binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  BigCount out;
  mpz_bin_uiui(out.get_mpz_t(), n, r);
  return out;
}

BigCount multinomial(std::uint64_t total, std::span<const std::int64_t> parts) {
  std::uint64_t remaining = total;
  BigCount out = 1;
  for (auto p : parts) {
    if (p < 0 || static_cast<std::uint64_t>(p) > remaining) return 0;
    out *= binomial(remaining, static_cast<std::uint64_t>(p));
    remaining -= static_cast<std::uint64_t>(p);
  }
  return remaining == 0 ? out : BigCount(0);
}

BigCount falling_factorial(std::uint64_t n, std::uint64_t x) {
  if (x > n) return 0;
  BigCount out = 1;
  for (std::uint64_t i = 0; i < x; ++i) out *= static_cast<unsigned long>(n - i);
  return out;
}

BigCount pow(const BigCount& base, std::uint64_t exponent) {
  BigCount out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

long double ln(const BigCount& value) {
  if (value <= 0) throw Error(ErrorKind::InvalidArgument, "ln of a nonpositive integer");
  const std::size_t bits = mpz_sizeinbase(value.get_mpz_t(), 2);
  if (bits <= 64) {
    std::uint64_t v = 0;
    mpz_export(&v, nullptr, -1, sizeof v, 0, 0, value.get_mpz_t());
    return std::log(static_cast<long double>(v));
  }
  const std::size_t shift = bits - 64;
  BigCount top;
  mpz_fdiv_q_2exp(top.get_mpz_t(), value.get_mpz_t(), shift);
  std::uint64_t v = 0;
  mpz_export(&v, nullptr, -1, sizeof v, 0, 0, top.get_mpz_t());
  return std::log(static_cast<long double>(v)) + static_cast<long double>(shift) * kLn2;
}

long double ln(const Rational& value) {
  if (value <= 0) throw Error(ErrorKind::InvalidArgument, "ln of a nonpositive rational");
  return ln(BigCount(value.get_num())) - ln(BigCount(value.get_den()));
}

long double to_long_double(const Rational& value) {
  if (value == 0) return 0.0L;
  const long double mag = std::exp(ln(value < 0 ? Rational(-value) : value));
  return value < 0 ? -mag : mag;
}

}  // namespace semifactor
