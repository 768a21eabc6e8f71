#include <doctest.h>

#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "semifactor/asympt.hpp"
#include "semifactor/exact.hpp"
#include "semifactor/special.hpp"
#include "support.hpp"

using namespace semifactor;
using doctest::Approx;
using testing::error_kind;

namespace {

Rational q(std::int64_t a, std::int64_t b) { return make_rational(a, b); }

double d(long double x) { return static_cast<double>(x); }

}  // namespace

TEST_SUITE("rprime") {
  TEST_CASE("examples") {
    CHECK(rprime(make_spec(2, 2, {1, 1})).value() == Approx(1.885618).epsilon(1e-6));
    // 10^20 / C(100,10) * 0.9^4.5 by exact integer arithmetic.
    const long double ln_direct = 20.0L * std::log(10.0L) - ln(binomial(100, 10)) + 4.5L * std::log(0.9L);
    CHECK(d(rprime(make_spec(10, 10, {9, 1})).ln()) == Approx(d(ln_direct)).epsilon(1e-13));
    CHECK(rprime(make_spec(10, 10, {9, 1})).value() == Approx(3.595725e6).epsilon(1e-6));
    CHECK(rprime(make_spec(5, 7, {7})).ln() == 0.0L);
  }

  TEST_CASE("matches the exact rational form") {
    for (const auto& spec : {make_spec(2, 2, {1, 1}), make_spec(4, 4, {2, 1, 1}), make_spec(6, 9, {3, 3, 3}),
                             make_spec(30, 30, {10, 5, 15})}) {
      const auto exact = rprime_exact(spec);
      CHECK(d(rprime(spec).ln()) == Approx(d(exact.ln())).epsilon(1e-12));
    }
  }

  TEST_CASE("k = 1 equals the regular estimate") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const std::int64_t m = std::uniform_int_distribution<std::int64_t>(2, 60)(rng);
      const std::int64_t d1 = std::uniform_int_distribution<std::int64_t>(1, m - 1)(rng);
      const auto spec = make_spec(m, m, {m - d1, d1});
      CHECK(d(rprime(spec).ln()) == Approx(d(regular_estimate(m, m, d1).ln())).epsilon(1e-12));
    }
  }
}

TEST_SUITE("rapprox") {
  TEST_CASE("delta terms") {
    CHECK(d(rapprox_delta(10, 10, q(1, 10), 1, DeltaVariant::Delta2)) == Approx(0.0));
    CHECK(d(rapprox_delta(10, 10, q(1, 10), 1, DeltaVariant::Delta1)) == Approx(-1.0 / 120.0).epsilon(1e-12));
  }

  TEST_CASE("single matching") {
    CHECK(d(rapprox(make_spec(10, 10, {9, 1}), DeltaVariant::Delta2).ln()) == Approx(15.104413).epsilon(1e-7));
  }

  TEST_CASE("variants differ by the delta difference") {
    for (const auto& spec : {make_spec(10, 10, {7, 2, 1}), make_spec(12, 8, {4, 2, 2}), make_spec(20, 20, {15, 5})}) {
      const Rational lambda = q(spec.n() - spec.row_degrees()[0], spec.n());
      const long double want = rapprox_delta(spec.m(), spec.n(), lambda, spec.k(), DeltaVariant::Delta1) -
                               rapprox_delta(spec.m(), spec.n(), lambda, spec.k(), DeltaVariant::Delta2);
      const long double got = rapprox(spec, DeltaVariant::Delta1).ln() - rapprox(spec, DeltaVariant::Delta2).ln();
      CHECK(d(got) == Approx(d(want)).epsilon(1e-9));
    }
  }

  TEST_CASE("error against rprime shrinks as the density falls") {
    long double previous = INFINITY;
    for (std::int64_t n : {10, 20, 40, 80}) {
      const auto spec = make_spec(n, n, {n - 2, 1, 1});
      const long double gap = std::abs(rprime(spec).ln() - rapprox(spec, DeltaVariant::Delta1).ln());
      CHECK(gap < previous);
      previous = gap;
    }
  }

  TEST_CASE("needs nonempty factors") {
    CHECK(error_kind([] { rapprox(make_spec(4, 4, {3, 0, 1}), DeltaVariant::Delta1); }) == ErrorKind::InvalidSpec);
    CHECK(error_kind([] { rapprox(make_spec(4, 4, {0, 4}), DeltaVariant::Delta1); }) == ErrorKind::InvalidSpec);
  }
}

TEST_SUITE("falling factorial") {
  TEST_CASE("examples") {
    const auto zero = falling_factorial_expansion(10, q(0, 1));
    CHECK(zero.exact == 0.0L);
    CHECK(d(zero.expansion) == Approx(0.0));
    CHECK(d(falling_factorial_expansion(10, q(1, 10)).exact) == Approx(std::log(10.0)).epsilon(1e-14));
    const auto hundred = falling_factorial_expansion(100, q(1, 10));
    CHECK(d(hundred.exact) == Approx(d(ln(falling_factorial(100, 10)))).epsilon(1e-13));
    CHECK(d(hundred.exact) == Approx(45.58673593535416).epsilon(1e-13));
    CHECK(std::abs(hundred.difference) <= 1e-2L);
    CHECK(hundred.difference == hundred.exact - hundred.expansion);
  }

  TEST_CASE("non-integral lambda N") {
    CHECK(error_kind([] { falling_factorial_expansion(10, q(1, 3)); }) == ErrorKind::NonIntegral);
  }
}

TEST_SUITE("exponents") {
  TEST_CASE("silver") {
    CHECK(d(silver_exponent(7, 9, q(0, 1), q(1, 7))) == Approx(0.0));
    CHECK(d(silver_exponent(5, 5, q(1, 5), q(1, 5))) == Approx(-1.0));
    CHECK(d(silver_exponent(10, 10, q(0, 1), q(1, 5))) == Approx(-0.5));
  }

  TEST_CASE("mw") {
    CHECK(d(mw_exponent(10, 10, q(0, 1), q(1, 10))) == Approx(-1.0 / 60.0).epsilon(1e-12));
    CHECK(d(mw_exponent(5, 5, q(1, 5), q(1, 5))) == Approx(-1.0 - 1.0 / 30.0).epsilon(1e-12));
    const Rational lh = q(3, 11);
    const long double diff = mw_exponent(11, 13, q(2, 11), lh) - silver_exponent(11, 13, q(2, 11), lh);
    CHECK(d(diff) == Approx(-(27.0 / 1331.0) * 143.0 / 6.0).epsilon(1e-12));
  }

  TEST_CASE("aggregate") {
    const Rational tenth[] = {q(1, 10)};
    const auto one = aggregate_exponent(10, 10, tenth, ExponentVariant::Silver);
    CHECK(d(one.telescoped) == Approx(0.0));
    CHECK(d(one.closed) == Approx(0.0));
    const Rational two[] = {q(1, 10), q(1, 10)};
    const auto s = aggregate_exponent(10, 10, two, ExponentVariant::Silver);
    CHECK(d(s.telescoped) == Approx(-1.0));
    CHECK(d(s.closed) == Approx(-1.0));
    const auto mw = aggregate_exponent(10, 10, two, ExponentVariant::MW);
    CHECK(d(mw.telescoped) == Approx(-1.0 - 1.0 / 30.0).epsilon(1e-12));
    CHECK(d(mw.closed) == Approx(-1.0 - 1.0 / 30.0).epsilon(1e-12));
  }

  TEST_CASE("telescoped sum equals the closed form on random inputs") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
      const std::int64_t m = std::uniform_int_distribution<std::int64_t>(2, 300)(rng);
      const std::int64_t n = std::uniform_int_distribution<std::int64_t>(2, 300)(rng);
      const int k = std::uniform_int_distribution<int>(1, 6)(rng);
      std::vector<Rational> lams;
      for (int i = 0; i < k; ++i) lams.push_back(q(std::uniform_int_distribution<std::int64_t>(1, 50)(rng), 300));
      for (auto v : {ExponentVariant::Silver, ExponentVariant::MW}) {
        const auto a = aggregate_exponent(m, n, lams, v);
        CHECK(d(a.telescoped) == Approx(d(a.closed)).epsilon(1e-9).scale(1.0));
      }
    }
  }
}

TEST_SUITE("probabilities") {
  TEST_CASE("disjointness estimate") {
    const Rational pair[] = {q(1, 5), q(1, 5)};
    CHECK(d(disjoint_probability_estimate(5, 5, pair).ln()) == Approx(-1.0));
    CHECK(disjoint_probability_estimate(5, 5, pair).value() == Approx(0.367879).epsilon(1e-6));
    const Rational single[] = {q(1, 5)};
    CHECK(disjoint_probability_estimate(5, 5, single).ln() == 0.0L);
    const Rational triple[] = {q(1, 6), q(1, 6), q(1, 6)};
    CHECK(d(disjoint_probability_estimate(6, 6, triple).ln()) == Approx(-3.0));
  }

  TEST_CASE("dense overlap") {
    CHECK(dense_overlap_P(20, 20, q(1, 2), q(0, 1)).ln() == 0.0L);
    CHECK(dense_overlap_P(20, 20, q(1, 2), q(1, 20)).value() == Approx(1.57234e-6).epsilon(1e-5));
    // lamhat mn = m + n: second term vanishes.
    CHECK(d(dense_overlap_P(10, 10, q(1, 2), q(1, 5)).ln()) == Approx(20.0 * std::log(0.5)).epsilon(1e-14));
  }
}

TEST_SUITE("stirling") {
  TEST_CASE("g values") {
    CHECK(d(stirling_correction(1)) == Approx(1.0 - 0.5 * std::log(2.0 * M_PI)).epsilon(1e-13));
    CHECK(d(stirling_correction(1)) == Approx(0.081061).epsilon(1e-5));
    CHECK(d(stirling_correction(10)) == Approx(0.0083306).epsilon(1e-5));
  }

  TEST_CASE("g close to 1/(12N)") {
    for (std::int64_t N = 1; N <= 1000; ++N) {
      const long double x = static_cast<long double>(N);
      CHECK(std::abs(stirling_correction(N) - 1.0L / (12.0L * x)) <= 1.0L / (360.0L * x * x * x));
    }
  }

  TEST_CASE("one branch continues the other") {
    for (std::int64_t N : {49, 50, 51}) {
      const long double direct = ln_factorial(N) - (0.5L * std::log(2.0L * M_PIl) + (N + 0.5L) * std::log(static_cast<long double>(N)) - N);
      CHECK(d(stirling_correction(N)) == Approx(d(direct)).epsilon(1e-9));
    }
  }

  TEST_CASE("gbar") {
    for (std::int64_t N : {5, 10, 40}) CHECK(d(gbar(N, q(0, 1), q(1, 5))) == Approx(0.0).scale(1.0));
    CHECK(error_kind([] { gbar(10, q(1, 3), q(1, 5)); }) == ErrorKind::NonIntegral);
  }

  TEST_CASE("dense ratio forms agree") {
    const auto r = dense_ratio(20, 20, q(1, 2), q(1, 20));
    CHECK(d(r.factorial_form) == Approx(d(r.g_form)).epsilon(1e-9));
  }
}

TEST_SUITE("latin asymptotics") {
  TEST_CASE("examples") {
    CHECK(latin_asymptotic(10, 1).value() == Approx(3727376.3450104217).epsilon(1e-12));
    for (std::int64_t n : {3, 7, 20}) {
      const long double x = static_cast<long double>(n);
      const long double want = ln_factorial(n) - 0.5L * x * std::log(1.0L - 1.0L / x) - 0.5L;
      CHECK(d(latin_asymptotic(n, 1).ln()) == Approx(d(want)).epsilon(1e-13));
    }
    const long double a = latin_asymptotic(6, 2).ln();
    const long double b = rprime(make_spec(6, 6, {4, 1, 1})).ln();
    CHECK(std::abs(a - b) / std::abs(b) <= 0.05L);
    CHECK(error_kind([] { latin_asymptotic(5, 5); }) == ErrorKind::KOutOfRange);
  }
}

TEST_SUITE("ransplit") {
  TEST_CASE("examples") {
    const std::int64_t single[] = {2};
    CHECK(ransplit_prediction(4, 4, single).ln() == 0.0L);
    const std::int64_t pair[] = {1, 1};
    CHECK(ransplit_prediction(3, 3, pair).value() == Approx(32.0 / 15.0).epsilon(1e-12));
    const long double diff = rprime(make_spec(4, 4, {2, 1, 1})).ln() - rprime(make_spec(4, 4, {2, 2})).ln();
    CHECK(d(ransplit_prediction(4, 4, pair).ln()) == Approx(d(diff)).epsilon(1e-9));
  }
}

TEST_SUITE("clt") {
  TEST_CASE("model for m = 3, k = 1") {
    const Rational lams[] = {q(2, 3), q(1, 3)};
    const auto model = clt_model(3, lams);
    REQUIRE(model.C.rows() == 2);
    CHECK(model.C(0, 1) == Approx(-0.5));
    CHECK(model.C.determinant() == Approx(0.75));
    CHECK(model.sigma.determinant() == Approx(1.0 / 27.0));
    const auto det = clt_determinant(model);
    CHECK(d(det.closed) == Approx(1.0 / 27.0).epsilon(1e-12));
    CHECK(d(det.direct) == Approx(1.0 / 27.0).epsilon(1e-12));
  }

  TEST_CASE("structure") {
    const Rational lams[] = {q(1, 2), q(1, 4), q(1, 8), q(1, 8)};
    const auto model = clt_model(5, lams);
    CHECK(model.sigma.rows() == 12);
    CHECK(model.B.determinant() == Approx(0.5 * 0.25 * 0.125 * 0.125));
    CHECK((model.sigma - model.sigma.transpose()).cwiseAbs().maxCoeff() <= 1e-15);
    // Row (i, c) maps to index (i - 1) k + (c - 1).
    const Eigen::MatrixXd kron = Eigen::kroneckerProduct(model.C, model.B);
    CHECK((model.sigma - kron).cwiseAbs().maxCoeff() <= 1e-12);
    for (int i = 1; i <= 4; ++i)
      for (int c = 1; c <= 3; ++c) {
        const double lc = to_long_double(lams[c]);
        CHECK(covariance_entry(model, i, c, i, c) == Approx(lc * (1 - lc)));
      }
    CHECK(clt_positive_definite(model));
  }

  TEST_CASE("B determinant") {
    const Rational lams[] = {q(1, 2), q(1, 4), q(1, 4)};
    CHECK(clt_model(4, lams).B.determinant() == Approx(1.0 / 32.0));
  }

  TEST_CASE("m = 2 determinant") {
    const Rational lams[] = {q(1, 2), q(1, 2)};
    const auto det = clt_determinant(clt_model(2, lams));
    CHECK(d(det.closed) == Approx(0.25));
    CHECK(d(det.direct) == Approx(0.25));
  }

  TEST_CASE("degenerate and invalid models") {
    const Rational zero[] = {q(1, 1), q(0, 1)};
    CHECK(error_kind([&] { clt_model(3, zero); }) == ErrorKind::DegenerateDensity);
    const Rational many[] = {q(1, 4), q(1, 4), q(1, 4), q(1, 4)};
    CHECK(error_kind([&] { clt_model(3, many); }) == ErrorKind::InvalidArgument);
    const Rational half[] = {q(1, 2), q(1, 2)};
    CHECK(error_kind([&] { clt_model(1, half); }) == ErrorKind::InvalidArgument);
  }

  TEST_CASE("m = 2 estimate is the central binomial approximation") {
    long double previous = INFINITY;
    for (std::int64_t n : {10, 40, 160}) {
      const auto spec = make_spec(2, n, {n / 2, n / 2});
      const long double x = static_cast<long double>(n);
      const long double want = (x + 1.0L) * std::log(2.0L) - 0.5L * std::log(2.0L * M_PIl * x);
      CHECK(d(clt_estimate(spec).ln()) == Approx(d(want)).epsilon(1e-13));
      const long double gap = std::abs(clt_estimate(spec).ln() - ln(binomial(n, n / 2)));
      CHECK(gap < previous);
      previous = gap;
    }
  }

  TEST_CASE("final display gap shrinks") {
    long double previous = INFINITY;
    for (std::int64_t n : {30, 60, 90}) {
      const auto disp = clt_final_display(make_spec(3, n, {n / 3, n / 3, n / 3}));
      const long double gap = std::abs(disp.lhs - disp.rhs);
      CHECK(gap < previous);
      previous = gap;
    }
    CHECK(previous < 0.05L);
  }
}

TEST_SUITE("summation") {
  TEST_CASE("partial exponential series") {
    const std::vector<long double> a(4, 1.0L), b(4, 0.0L);
    const auto r = summation_bounds(a, b, 4, 0.3L);
    CHECK(d(r.sum) == Approx(2.708333).epsilon(1e-6));
    const long double tail = std::pow(0.6L * std::exp(1.0L), 4);
    CHECK(d(r.sigma1) == Approx(d(std::exp(1.0L) - tail)));
    CHECK(d(r.sigma2) == Approx(d(std::exp(1.0L) + tail)));
    CHECK(d(r.sigma1) == Approx(-4.357).epsilon(1e-3));
    CHECK(d(r.sigma2) == Approx(9.794).epsilon(1e-3));
    CHECK(r.bracketed);
  }

  TEST_CASE("zero A") {
    const std::vector<long double> a(5, 0.0L), b(5, 0.0L);
    const auto r = summation_bounds(a, b, 5, 0.1L);
    CHECK(r.sum == 1.0L);
    CHECK(r.bracketed);
  }

  TEST_CASE("A = 2, B = 1/(2Z)") {
    const int Z = 10;
    const std::vector<long double> a(Z, 2.0L), b(Z, 1.0L / (2 * Z));
    const auto r = summation_bounds(a, b, Z, 0.2L);
    CHECK(std::isfinite(r.sigma1));
    CHECK(std::isfinite(r.sigma2));
    CHECK(r.sigma1 <= r.sum);
    CHECK(r.sum <= r.sigma2);
  }

  TEST_CASE("hypothesis violations") {
    const std::vector<long double> a(4, 1.0L), b(4, 0.0L);
    CHECK(error_kind([&] { summation_bounds(a, b, 4, 0.34L); }) == ErrorKind::HypothesisViolated);
    CHECK(error_kind([&] { summation_bounds(a, b, 1, 0.3L); }) == ErrorKind::HypothesisViolated);
    const std::vector<long double> neg{1.0L, -1.0L, 1.0L, 1.0L};
    CHECK(error_kind([&] { summation_bounds(neg, b, 4, 0.3L); }) == ErrorKind::HypothesisViolated);
    const std::vector<long double> steep{0.0L, 0.0L, 0.9L, 0.0L};
    CHECK(error_kind([&] { summation_bounds(a, steep, 4, 0.3L); }) == ErrorKind::HypothesisViolated);
    const std::vector<long double> big(4, 2.0L);
    CHECK(error_kind([&] { summation_bounds(big, b, 4, 0.3L); }) == ErrorKind::HypothesisViolated);
    CHECK(error_kind([&] { summation_bounds(a, b, 5, 0.3L); }) == ErrorKind::LengthMismatch);
  }
}

TEST_SUITE("regimes") {
  TEST_CASE("case 1 at (100, 100, 1/100)") {
    const Rational l[] = {q(1, 100)};
    const auto rep = regime_classify(100, 100, l);
    const auto& c1 = rep.single_factor.at(0);
    CHECK(c1.id == "1");
    CHECK(d(c1.conditions.at(1).lhs) == Approx(0.1));
    CHECK(c1.satisfied);
    CHECK(rep.any_single);
    CHECK(rep.note.find("heuristic") != std::string::npos);
  }

  TEST_CASE("case 2 left side vanishes at lambda = 1/2") {
    const Rational l[] = {q(1, 2)};
    for (double eps : {0.1, 1.0, 3.9}) {
      RegimeParams p;
      p.eps = eps;
      const auto& cond = regime_classify(50, 50, l, p).single_factor.at(1).conditions.at(1);
      CHECK(cond.lhs == 0.0L);
      CHECK(cond.holds);
    }
  }

  TEST_CASE("case 3 bound at (4, 10^6, 1/2)") {
    const Rational l[] = {q(1, 2)};
    const auto& c3 = regime_classify(4, 1'000'000, l).single_factor.at(2);
    CHECK(d(c3.conditions.at(2).rhs) == Approx(144.3).epsilon(1e-3));
    CHECK(c3.satisfied);
  }

  TEST_CASE("multi-factor quantities") {
    const Rational l[] = {q(1, 40), q(1, 40), q(1, 40)};
    const auto rep = regime_classify(40, 40, l);
    REQUIRE(rep.multi_factor.size() == 6);
    const auto& b = rep.multi_factor.at(1);
    CHECK(d(b.conditions.at(2).lhs) == Approx(std::pow(40.0, 3) * std::pow(3.0 / 40.0, 3) / 40.0));
    const auto& c = rep.multi_factor.at(2);
    CHECK(d(c.conditions.at(2).lhs) == Approx(std::sqrt(40.0) * 40.0 * 3.0 / 1600.0));
    CHECK(rep.multi_factor.at(3).satisfied);
  }

  TEST_CASE("report is reproducible from its inputs") {
    const Rational l[] = {q(1, 6), q(1, 3)};
    const auto a = regime_classify(30, 60, l);
    const auto b = regime_classify(30, 60, l);
    REQUIRE(a.multi_factor.size() == b.multi_factor.size());
    for (std::size_t i = 0; i < a.multi_factor.size(); ++i) {
      CHECK(a.multi_factor[i].satisfied == b.multi_factor[i].satisfied);
      for (std::size_t j = 0; j < a.multi_factor[i].conditions.size(); ++j)
        CHECK(a.multi_factor[i].conditions[j].lhs == b.multi_factor[i].conditions[j].lhs);
    }
  }

  TEST_CASE("invalid margin") {
    const Rational l[] = {q(1, 2)};
    RegimeParams p;
    p.margin = 0.0;
    CHECK(error_kind([&] { regime_classify(4, 4, l, p); }) == ErrorKind::InvalidArgument);
  }
}
