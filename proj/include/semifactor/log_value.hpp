#pragma once

#include <string>

#include "semifactor/bignum.hpp"

namespace semifactor {

/// A signed real stored as (sign, ln |x|). Used for every asymptotic formula
/// value, since most of them overflow a double long before desk-scale sizes
/// become interesting.
class LogValue {
 public:
  /// Zero.
  LogValue() = default;

  static LogValue from_ln(long double ln_magnitude, int sign = 1);
  static LogValue from_value(long double value);
  static LogValue from_count(const BigCount& value);
  static LogValue from_rational(const Rational& value);

  int sign() const noexcept { return sign_; }
  bool is_zero() const noexcept { return sign_ == 0; }

  /// ln |x|; -inf for zero.
  long double ln() const noexcept;

  /// x itself; may overflow to ±inf.
  long double value() const;

  /// Scientific notation with 12 significant digits, e.g. "3.59572492576e+06".
  std::string decimal_approx() const;

  LogValue operator-() const;
  friend LogValue operator*(const LogValue& a, const LogValue& b);
  friend LogValue operator/(const LogValue& a, const LogValue& b);
  friend LogValue operator+(const LogValue& a, const LogValue& b);
  friend LogValue operator-(const LogValue& a, const LogValue& b) { return a + (-b); }

  /// x^p for x >= 0; negative bases are rejected.
  LogValue pow(long double p) const;

 private:
  int sign_ = 0;
  long double ln_ = 0.0L;
};

}  // namespace semifactor
