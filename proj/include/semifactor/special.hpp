#pragma once

#include <cstdint>
#include <span>

namespace semifactor {

/// ln Γ(x) for x > 0 in long double.
///
/// Arguments in [0.5, 2.5] use the power series of ln Γ(1 + ε) about the
/// zeros at 1 and 2, so relative accuracy holds right up to those points.
/// Larger arguments are shifted to at least 16 and evaluated with the
/// Stirling series truncated after the B₁₈ term. Relative error is below
/// 1e-17 for x ≥ 0.5.
long double ln_gamma(long double x);

/// ln n! computed through `ln_gamma`; exactly 0 for n ∈ {0, 1}.
long double ln_factorial(std::int64_t n);

long double ln_binomial(std::int64_t n, std::int64_t r);

/// ln (total; parts...) multinomial. Parts must be nonnegative and sum to
/// `total`.
long double ln_multinomial(std::int64_t total, std::span<const std::int64_t> parts);

/// ln of the falling factorial (n)_x = n (n - 1) ... (n - x + 1).
long double ln_falling(std::int64_t n, std::int64_t x);

inline constexpr long double kPi = 3.141592653589793238462643383279502884L;
inline constexpr long double kLnTwoPi = 1.837877066409345483560659472811235279L;
inline constexpr long double kEulerGamma = 0.577215664901532860606512090082402431L;

}  // namespace semifactor
