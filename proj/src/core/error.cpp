#include "semifactor/error.hpp"

namespace semifactor {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::DegreeSumMismatch: return "DegreeSumMismatch";
    case ErrorKind::IntegralityViolation: return "IntegralityViolation";
    case ErrorKind::NegativeDegree: return "NegativeDegree";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NonIntegral: return "NonIntegral";
    case ErrorKind::KOutOfRange: return "KOutOfRange";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::DegenerateDensity: return "DegenerateDensity";
  }
  return "Unknown";
}

}  // namespace semifactor
