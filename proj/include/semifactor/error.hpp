#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace semifactor {

enum class ErrorKind {
  InvalidSpec,
  DegreeSumMismatch,
  IntegralityViolation,
  NegativeDegree,
  ShapeMismatch,
  LengthMismatch,
  InvalidArgument,
  ParseError,
  BudgetExceeded,
  TooLarge,
  NonIntegral,
  KOutOfRange,
  ZeroDenominator,
  HypothesisViolated,
  DegenerateDensity,
};

std::string_view to_string(ErrorKind kind) noexcept;

// All library failures are reported through this exception type; `kind()`
// identifies the failure for programmatic handling and the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& message, std::uint64_t states_explored)
      : Error(ErrorKind::BudgetExceeded, message),
        states_explored_(states_explored) {}

  std::uint64_t states_explored() const noexcept { return states_explored_; }

 private:
  std::uint64_t states_explored_;
};

}  // namespace semifactor
