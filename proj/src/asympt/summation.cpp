#include <algorithm>
#include <cmath>
#include <numbers>

#include "semifactor/asympt.hpp"
#include "semifactor/error.hpp"

namespace semifactor {

namespace {

[[noreturn]] void violated(const std::string& what) {
  throw Error(ErrorKind::HypothesisViolated, "summation hypothesis fails: " + what);
}

}  // namespace

SummationBounds summation_bounds(std::span<const long double> a, std::span<const long double> b,
                                 int Z, long double chat) {
  if (Z < 2) violated("Z >= 2");
  if (a.size() != static_cast<std::size_t>(Z) || b.size() != static_cast<std::size_t>(Z)) {
    throw Error(ErrorKind::LengthMismatch, "A and B must hold exactly Z values");
  }
  if (!(chat > 0.0L && chat < 1.0L / 3.0L)) violated("0 < chat < 1/3");

  long double a1 = a[0], a2 = a[0];
  long double c1 = a[0] * b[0], c2 = c1;
  for (int i = 1; i <= Z; ++i) {
    const long double ai = a[i - 1];
    const long double bi = b[i - 1];
    if (ai < 0.0L) violated("A(" + std::to_string(i) + ") >= 0");
    if (1.0L - (i - 1) * bi < 0.0L) violated("1 - (i-1) B(i) >= 0 at i = " + std::to_string(i));
    a1 = std::min(a1, ai);
    a2 = std::max(a2, ai);
    c1 = std::min(c1, ai * bi);
    c2 = std::max(c2, ai * bi);
  }
  // A/Z and |C| are largest at the interval ends.
  if (a2 / Z > chat) violated("A/Z <= chat over [A1, A2]");
  if (std::max(std::abs(c1), std::abs(c2)) > chat) violated("|C| <= chat over [C1, C2]");

  long double term = 1.0L;
  long double sum = 1.0L;
  for (int i = 1; i <= Z; ++i) {
    const long double factor = a[i - 1] * (1.0L - (i - 1) * b[i - 1]);
    if (factor == 0.0L) break;
    term *= factor / i;
    sum += term;
  }

  const long double tail = std::pow(2.0L * std::numbers::e_v<long double> * chat, Z);
  SummationBounds out;
  out.sigma1 = std::exp(a1 - 0.5L * a1 * c2) - tail;
  out.sigma2 = std::exp(a2 - 0.5L * a2 * c1 + 0.5L * a2 * c1 * c1) + tail;
  out.sum = sum;
  out.bracketed = out.sigma1 <= sum && sum <= out.sigma2;
  return out;
}

}  // namespace semifactor
