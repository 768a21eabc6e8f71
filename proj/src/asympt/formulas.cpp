#include <cmath>
#include <numeric>

#include "semifactor/asympt.hpp"
#include "semifactor/error.hpp"
#include "semifactor/special.hpp"

namespace semifactor {

namespace {

long double ld(const Rational& q) { return to_long_double(q); }

// (1 - 1/m)^e in log form, with 0^0 = 1 at m = 1.
long double ln_one_minus_inverse(std::int64_t m, long double exponent) {
  if (exponent == 0.0L) return 0.0L;
  return exponent * std::log1p(-1.0L / static_cast<long double>(m));
}

std::vector<std::int64_t> scaled(std::span<const std::int64_t> parts, std::int64_t factor) {
  std::vector<std::int64_t> out(parts.begin(), parts.end());
  for (auto& p : out) p *= factor;
  return out;
}

Rational integral_part(const Rational& q, std::int64_t N, const char* what) {
  Rational x = q * N;
  if (x.get_den() != 1) throw Error(ErrorKind::NonIntegral, std::string(what) + " is not an integer");
  return x;
}

}  // namespace

LogValue rprime(const FactorisationSpec& spec) {
  const std::int64_t m = spec.m();
  const std::int64_t n = spec.n();
  const auto& s = spec.row_degrees();
  const auto& t = spec.column_degrees();
  const long double value = static_cast<long double>(m) * ln_multinomial(n, s) +
                            static_cast<long double>(n) * ln_multinomial(m, t) -
                            ln_multinomial(m * n, scaled(s, m)) +
                            ln_one_minus_inverse(m, spec.k() * (m - 1) / 2.0L);
  return LogValue::from_ln(value);
}

LogValue regular_estimate(std::int64_t m, std::int64_t n, std::int64_t d) {
  return rprime(make_spec(m, n, {n - d, d}));
}

long double ExactRprime::ln() const {
  long double out = semifactor::ln(ratio);
  if (exponent != 0) out += to_long_double(exponent) * semifactor::ln(base);
  return out;
}

ExactRprime rprime_exact(const FactorisationSpec& spec) {
  const std::int64_t m = spec.m();
  const std::int64_t n = spec.n();
  const auto& s = spec.row_degrees();
  const BigCount top = pow(multinomial(static_cast<std::uint64_t>(n), s), static_cast<std::uint64_t>(m)) *
                       pow(multinomial(static_cast<std::uint64_t>(m), spec.column_degrees()),
                           static_cast<std::uint64_t>(n));
  ExactRprime out;
  out.ratio = Rational(top, multinomial(static_cast<std::uint64_t>(m * n), scaled(s, m)));
  out.ratio.canonicalize();
  out.base = make_rational(m - 1, m);
  out.exponent = make_rational(spec.k() * (m - 1), 2);
  return out;
}

long double rapprox_delta(std::int64_t m, std::int64_t n, const Rational& lambda, int k,
                          DeltaVariant variant) {
  const Rational M(m);
  const Rational N(n);
  const Rational K(k);
  const Rational half(1, 2);
  Rational d;
  if (variant == DeltaVariant::Delta2) {
    d = -half * K + half * lambda * (M + N) - half * lambda * lambda * M * N;
  } else {
    d = -half * K + K / (4 * M) - half * lambda + Rational(1, 4) * lambda * (2 + lambda) * (M + N) -
        Rational(1, 6) * lambda * lambda * (3 + lambda) * M * N -
        Rational(1, 12) * lambda * (M / N + N / M);
  }
  return ld(d);
}

LogValue rapprox(const FactorisationSpec& spec, DeltaVariant variant) {
  const auto& s = spec.row_degrees();
  const auto& t = spec.column_degrees();
  if (spec.k() < 1 || s[0] == 0 || !spec.strict()) {
    throw Error(ErrorKind::InvalidSpec, "rapprox needs nonempty factors 1..k and a nonempty factor 0");
  }
  const std::int64_t m = spec.m();
  const std::int64_t n = spec.n();
  long double total = 0.0L;
  for (int i = 1; i <= spec.k(); ++i) {
    total += ln_factorial(s[i] * m) - static_cast<long double>(n) * ln_factorial(t[i]) -
             static_cast<long double>(m) * ln_factorial(s[i]);
  }
  const Rational lambda = make_rational(n - s[0], n);
  return LogValue::from_ln(total + rapprox_delta(m, n, lambda, spec.k(), variant));
}

FallingExpansion falling_factorial_expansion(std::int64_t N, const Rational& lambda) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "N must be positive");
  if (lambda < 0 || lambda > 1) throw Error(ErrorKind::InvalidArgument, "lambda must lie in [0, 1]");
  const Rational x = integral_part(lambda, N, "lambda * N");
  const long double l = ld(lambda);
  const long double nn = static_cast<long double>(N);
  FallingExpansion out;
  out.exact = ln_falling(N, x.get_num().get_si());
  out.expansion = ld(x) * std::log(nn) - l * l * (3.0L + l) * nn / 6.0L + l * (2.0L + l) / 4.0L -
                  l / (12.0L * nn);
  out.difference = out.exact - out.expansion;
  return out;
}

long double silver_exponent(std::int64_t m, std::int64_t n, const Rational& lam_d,
                            const Rational& lam_h) {
  const Rational a = lam_h * m - 1;
  const Rational b = lam_h * n - 1;
  return ld(-a * b / 2 - lam_h * lam_d * m * n);
}

long double mw_exponent(std::int64_t m, std::int64_t n, const Rational& lam_d,
                        const Rational& lam_h) {
  const Rational cubic = lam_h * lam_h * lam_h * m * n / 6;
  return silver_exponent(m, n, lam_d, lam_h) - ld(cubic);
}

AggregateExponent aggregate_exponent(std::int64_t m, std::int64_t n,
                                     std::span<const Rational> lams, ExponentVariant variant) {
  AggregateExponent out{0.0L, 0.0L};
  Rational before = 0;
  for (const auto& lam : lams) {
    out.telescoped += variant == ExponentVariant::Silver ? silver_exponent(m, n, before, lam)
                                                         : mw_exponent(m, n, before, lam);
    before += lam;
  }
  const long double mm = static_cast<long double>(m);
  const long double nn = static_cast<long double>(n);
  const long double lambda = ld(before);
  out.closed = -0.5L * static_cast<long double>(lams.size()) + 0.5L * lambda * (mm + nn) -
               0.5L * lambda * lambda * mm * nn;
  if (variant == ExponentVariant::MW) {
    long double cubes = 0.0L;
    for (const auto& lam : lams) cubes += std::pow(ld(lam), 3);
    out.closed -= mm * nn * cubes / 6.0L;
  }
  return out;
}

LogValue disjoint_probability_estimate(std::int64_t m, std::int64_t n,
                                       std::span<const Rational> lams) {
  Rational pairs = 0;
  Rational before = 0;
  for (const auto& lam : lams) {
    pairs += lam * before;
    before += lam;
  }
  return LogValue::from_ln(-ld(pairs * m * n));
}

LogValue dense_overlap_P(std::int64_t m, std::int64_t n, const Rational& lam1,
                         const Rational& lamhat) {
  if (lam1 <= 0 || lam1 >= 1) throw Error(ErrorKind::InvalidArgument, "need 0 < lambda_1 < 1");
  if (lamhat < 0) throw Error(ErrorKind::InvalidArgument, "need lambda_hat >= 0");
  const Rational edges = lamhat * m * n;
  const long double first = ld(edges) * std::log1p(-ld(lam1));
  const Rational second = lam1 * lamhat * (edges - m - n) / (2 * (1 - lam1));
  return LogValue::from_ln(first - ld(second));
}

long double stirling_correction(std::int64_t N) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "N must be positive");
  const long double x = static_cast<long double>(N);
  if (N < 50) return ln_factorial(N) - 0.5L * kLnTwoPi - (x + 0.5L) * std::log(x) + x;
  // Direct subtraction loses too much beyond this point; the asymptotic series
  // is far more accurate here than the cancellation.
  static constexpr long double kCoef[] = {1.0L / 12,         -1.0L / 360,       1.0L / 1260,
                                          -1.0L / 1680,      1.0L / 1188,       -691.0L / 360360,
                                          1.0L / 156,        -3617.0L / 122400};
  const long double inv = 1.0L / x;
  const long double inv2 = inv * inv;
  long double sum = 0.0L;
  long double power = inv;
  for (long double c : kCoef) {
    sum += c * power;
    power *= inv2;
  }
  return sum;
}

long double gbar(std::int64_t N, const Rational& lamhat, const Rational& lam1) {
  const Rational both = integral_part(1 - lamhat - lam1, N, "(1 - lamhat - lam1) N");
  const Rational hat = integral_part(1 - lamhat, N, "(1 - lamhat) N");
  const Rational one = integral_part(1 - lam1, N, "(1 - lam1) N");
  if (N < 1 || both < 1 || hat < 1 || one < 1) {
    throw Error(ErrorKind::InvalidArgument, "gbar arguments must be positive");
  }
  const auto g = [](const Rational& x) { return stirling_correction(x.get_num().get_si()); };
  return (stirling_correction(N) - g(hat)) + (g(both) - g(one));
}

DenseRatio dense_ratio(std::int64_t m, std::int64_t n, const Rational& lam1,
                       const Rational& lamhat) {
  const long double gm = gbar(m, lamhat, lam1);
  const long double gn = gbar(n, lamhat, lam1);
  const long double gmn = gbar(m * n, lamhat, lam1);
  const long double ln_p = dense_overlap_P(m, n, lam1, lamhat).ln();

  const auto ratio = [&](std::int64_t N) {
    const auto part = [N](const Rational& q) {
      return ln_factorial(Rational(q * N).get_num().get_si());
    };
    return ln_factorial(N) + part(1 - lam1 - lamhat) - part(1 - lam1) - part(1 - lamhat);
  };
  DenseRatio out;
  out.factorial_form = ln_p + static_cast<long double>(n) * ratio(m) +
                       static_cast<long double>(m) * ratio(n) - ratio(m * n);

  const long double mn = static_cast<long double>(m) * static_cast<long double>(n);
  const long double h = (static_cast<long double>(m + n) - 1.0L) / 2.0L;
  const long double a = ld(1 - lamhat - lam1);
  const long double c = ld(1 - lamhat);
  const long double l1 = ld(lam1);
  const long double lh = ld(lamhat);
  out.g_form = -(c * mn + h) * std::log(c) + (a * mn + h) * std::log1p(-lh / (1.0L - l1)) -
               l1 * lh * (lh * mn - static_cast<long double>(m + n)) / (2.0L * (1.0L - l1)) +
               static_cast<long double>(n) * gm + static_cast<long double>(m) * gn - gmn;
  return out;
}

LogValue latin_asymptotic(std::int64_t n, std::int64_t k) {
  if (k < 1 || k >= n) throw Error(ErrorKind::KOutOfRange, "need 1 <= k < n");
  const long double nn = static_cast<long double>(n);
  const long double kk = static_cast<long double>(k);
  const long double fact = ln_factorial(n);
  const long double value = kk * fact + nn * (fact - ln_factorial(n - k) - kk * std::log(nn)) -
                            0.5L * nn * std::log1p(-kk / nn) - 0.5L * kk;
  return LogValue::from_ln(value);
}

LogValue ransplit_prediction(std::int64_t m, std::int64_t n,
                             std::span<const std::int64_t> sub_degrees) {
  if (sub_degrees.empty()) throw Error(ErrorKind::InvalidSpec, "no sub-degrees given");
  const std::int64_t row_total = std::accumulate(sub_degrees.begin(), sub_degrees.end(), std::int64_t{0});
  std::vector<std::int64_t> full{n - row_total};
  full.insert(full.end(), sub_degrees.begin(), sub_degrees.end());
  const auto spec = make_spec(m, n, full);

  const std::vector<std::int64_t> s(sub_degrees.begin(), sub_degrees.end());
  const std::vector<std::int64_t> t(spec.column_degrees().begin() + 1, spec.column_degrees().end());
  const std::int64_t column_total = std::accumulate(t.begin(), t.end(), std::int64_t{0});
  const long double k = static_cast<long double>(s.size());
  const long double value = static_cast<long double>(m) * ln_multinomial(row_total, s) +
                            static_cast<long double>(n) * ln_multinomial(column_total, t) -
                            ln_multinomial(row_total * m, scaled(s, m)) +
                            ln_one_minus_inverse(m, (k - 1.0L) * static_cast<long double>(m - 1) / 2.0L);
  return LogValue::from_ln(value);
}

}  // namespace semifactor
