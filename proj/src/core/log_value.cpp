#include "semifactor/log_value.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "semifactor/error.hpp"

namespace semifactor {

namespace {
constexpr long double kLn10 = 2.302585092994045684017991454684364208L;
}

LogValue LogValue::from_ln(long double ln_magnitude, int sign) {
  LogValue out;
  if (sign == 0 || ln_magnitude == -std::numeric_limits<long double>::infinity()) return out;
  if (std::isnan(ln_magnitude)) throw Error(ErrorKind::InvalidArgument, "NaN logarithm");
  out.sign_ = sign > 0 ? 1 : -1;
  out.ln_ = ln_magnitude;
  return out;
}

LogValue LogValue::from_value(long double value) {
  if (value == 0.0L) return {};
  return from_ln(std::log(std::fabs(value)), value > 0 ? 1 : -1);
}

LogValue LogValue::from_count(const BigCount& value) {
  if (value == 0) return {};
  return from_ln(semifactor::ln(value), 1);
}

LogValue LogValue::from_rational(const Rational& value) {
  if (value == 0) return {};
  if (value < 0) return from_ln(semifactor::ln(Rational(-value)), -1);
  return from_ln(semifactor::ln(value), 1);
}

long double LogValue::ln() const noexcept {
  return sign_ == 0 ? -std::numeric_limits<long double>::infinity() : ln_;
}

long double LogValue::value() const {
  if (sign_ == 0) return 0.0L;
  return sign_ * std::exp(ln_);
}

std::string LogValue::decimal_approx() const {
  if (sign_ == 0) return "0";
  long double exponent10 = std::floor(ln_ / kLn10);
  long double mantissa = std::exp(ln_ - exponent10 * kLn10);
  // Rounding to 12 digits can carry the mantissa to 10.
  char digits[64];
  std::snprintf(digits, sizeof digits, "%.11Lf", mantissa);
  if (digits[0] == '1' && digits[1] == '0') {
    mantissa /= 10.0L;
    exponent10 += 1.0L;
    std::snprintf(digits, sizeof digits, "%.11Lf", mantissa);
  } else if (mantissa < 1.0L) {
    mantissa *= 10.0L;
    exponent10 -= 1.0L;
    std::snprintf(digits, sizeof digits, "%.11Lf", mantissa);
  }
  char out[96];
  std::snprintf(out, sizeof out, "%s%se%+03lld", sign_ < 0 ? "-" : "", digits,
                static_cast<long long>(exponent10));
  return out;
}

LogValue LogValue::operator-() const {
  LogValue out = *this;
  out.sign_ = -sign_;
  return out;
}

LogValue operator*(const LogValue& a, const LogValue& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return LogValue::from_ln(a.ln_ + b.ln_, a.sign_ * b.sign_);
}

LogValue operator/(const LogValue& a, const LogValue& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroDenominator, "division of LogValue by zero");
  if (a.is_zero()) return {};
  return LogValue::from_ln(a.ln_ - b.ln_, a.sign_ * b.sign_);
}

LogValue operator+(const LogValue& a, const LogValue& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const LogValue& big = a.ln_ >= b.ln_ ? a : b;
  const LogValue& small = a.ln_ >= b.ln_ ? b : a;
  const long double ratio = std::exp(small.ln_ - big.ln_);
  if (big.sign_ == small.sign_) return LogValue::from_ln(big.ln_ + std::log1p(ratio), big.sign_);
  if (ratio == 1.0L) return {};
  return LogValue::from_ln(big.ln_ + std::log1p(-ratio), big.sign_);
}

LogValue LogValue::pow(long double p) const {
  if (sign_ < 0) throw Error(ErrorKind::InvalidArgument, "pow of a negative LogValue");
  if (sign_ == 0) {
    if (p == 0.0L) return from_ln(0.0L);
    if (p < 0.0L) throw Error(ErrorKind::ZeroDenominator, "negative power of zero");
    return {};
  }
  return from_ln(ln_ * p, 1);
}

}  // namespace semifactor
