#include "semifactor/special.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "semifactor/error.hpp"

namespace semifactor {

namespace {

constexpr int kZetaTerms = 40;

// zeta(k) - 1 for k = 2..kZetaTerms: direct sum over 2 <= j < 64, then an
// Euler-Maclaurin tail from 64 (remainder below 1e-21 for every k here).
std::array<long double, kZetaTerms + 1> zeta_minus_one_table() {
  std::array<long double, kZetaTerms + 1> out{};
  constexpr int kCut = 64;
  const long double big_n = kCut;
  for (int k = 2; k <= kZetaTerms; ++k) {
    long double sum = 0.0L;
    for (int j = kCut - 1; j >= 2; --j) sum += std::pow(static_cast<long double>(j), -k);
    const long double kk = k;
    const long double nk = std::pow(big_n, -kk);
    long double tail = big_n * nk / (kk - 1.0L) + 0.5L * nk;
    long double rising = kk;                 // k (k+1) ... (k+2j-2)
    long double inv_pow = nk / big_n;        // N^{-k-2j+1}
    constexpr std::array<long double, 4> kBernoulliOverFact = {
        1.0L / 12.0L, -1.0L / 720.0L, 1.0L / 30240.0L, -1.0L / 1209600.0L};
    for (int j = 0; j < 4; ++j) {
      tail += kBernoulliOverFact[j] * rising * inv_pow;
      rising *= (kk + 2 * j + 1) * (kk + 2 * j + 2);
      inv_pow /= big_n * big_n;
    }
    out[k] = sum + tail;
  }
  return out;
}

// ln Γ(1 + z) for |z| <= 0.5.
long double ln_gamma_one_plus(long double z) {
  static const auto zeta = zeta_minus_one_table();
  long double series = 0.0L;
  for (int k = kZetaTerms; k >= 2; --k) {
    const long double sign = (k % 2 == 0) ? 1.0L : -1.0L;
    series = series * z + sign * zeta[k] / k;
  }
  series *= z * z;
  return z * (1.0L - kEulerGamma) - std::log1p(z) + series;
}

// Stirling series for z >= 16.
long double ln_gamma_stirling(long double z) {
  constexpr std::array<long double, 9> kCoeff = {
      1.0L / 12.0L,
      -1.0L / 360.0L,
      1.0L / 1260.0L,
      -1.0L / 1680.0L,
      1.0L / 1188.0L,
      -691.0L / 360360.0L,
      1.0L / 156.0L,
      -3617.0L / 122400.0L,
      43867.0L / 244188.0L,
  };
  const long double inv = 1.0L / z;
  const long double inv2 = inv * inv;
  long double corr = 0.0L;
  for (auto it = kCoeff.rbegin(); it != kCoeff.rend(); ++it) corr = corr * inv2 + *it;
  corr *= inv;
  return (z - 0.5L) * std::log(z) - z + 0.5L * kLnTwoPi + corr;
}

constexpr std::int64_t kFactorialTable = 4096;

const std::vector<long double>& ln_factorial_table() {
  static const std::vector<long double> table = [] {
    std::vector<long double> t(kFactorialTable + 1);
    for (std::int64_t n = 0; n <= kFactorialTable; ++n) {
      t[n] = n <= 1 ? 0.0L : ln_gamma(static_cast<long double>(n) + 1.0L);
    }
    return t;
  }();
  return table;
}

}  // namespace

long double ln_gamma(long double x) {
  if (!(x > 0.0L) || !std::isfinite(x)) {
    throw Error(ErrorKind::InvalidArgument, "ln_gamma requires a finite positive argument");
  }
  if (x < 0.5L) return ln_gamma_one_plus(x) - std::log(x);
  if (x <= 1.5L) return ln_gamma_one_plus(x - 1.0L);
  if (x <= 2.5L) return ln_gamma_one_plus(x - 2.0L) + std::log1p(x - 2.0L);
  long double shift = 0.0L;
  long double z = x;
  long double prod = 1.0L;
  while (z < 16.0L) {
    prod *= z;
    z += 1.0L;
  }
  if (prod != 1.0L) shift = std::log(prod);
  return ln_gamma_stirling(z) - shift;
}

long double ln_factorial(std::int64_t n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "factorial of a negative integer");
  if (n <= kFactorialTable) return ln_factorial_table()[static_cast<std::size_t>(n)];
  return ln_gamma(static_cast<long double>(n) + 1.0L);
}

long double ln_binomial(std::int64_t n, std::int64_t r) {
  if (r < 0 || r > n) throw Error(ErrorKind::InvalidArgument, "binomial out of range");
  return ln_factorial(n) - ln_factorial(r) - ln_factorial(n - r);
}

long double ln_multinomial(std::int64_t total, std::span<const std::int64_t> parts) {
  std::int64_t sum = 0;
  long double out = ln_factorial(total);
  for (auto p : parts) {
    if (p < 0) throw Error(ErrorKind::InvalidArgument, "negative multinomial part");
    sum += p;
    out -= ln_factorial(p);
  }
  if (sum != total) throw Error(ErrorKind::InvalidArgument, "multinomial parts do not sum to total");
  return out;
}

long double ln_falling(std::int64_t n, std::int64_t x) {
  if (x < 0 || x > n) throw Error(ErrorKind::InvalidArgument, "falling factorial out of range");
  return ln_factorial(n) - ln_factorial(n - x);
}

}  // namespace semifactor
