#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "semifactor/bignum.hpp"
#include "semifactor/graph.hpp"
#include "semifactor/log_value.hpp"
#include "semifactor/rng.hpp"
#include "semifactor/spec.hpp"
#include "semifactor/special.hpp"
#include "support.hpp"

using namespace semifactor;
using testing::error_kind;

TEST_SUITE("bignum") {
  TEST_CASE("decimal round trip") {
    const BigCount big = pow(BigCount(10), 40) + 7;
    CHECK(to_decimal(big) == "10000000000000000000000000000000000000007");
    CHECK(parse_count(to_decimal(big)) == big);
    CHECK(error_kind([] { parse_count("12x"); }) == ErrorKind::ParseError);
    CHECK(error_kind([] { parse_count("-3"); }) == ErrorKind::ParseError);
  }

  TEST_CASE("rationals are kept in lowest terms") {
    const Rational q = make_rational(6, 4);
    CHECK(q.get_num() == 3);
    CHECK(q.get_den() == 2);
    CHECK(to_string(make_rational(-2, 4)) == "-1/2");
    CHECK(error_kind([] { make_rational(1, 0); }) == ErrorKind::ZeroDenominator);
  }

  TEST_CASE("combinatorial numbers") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(10) == 3628800);
    CHECK(binomial(100, 10) == BigCount("17310309456440"));
    CHECK(binomial(3, 5) == 0);
    const std::int64_t parts[] = {1, 1, 1};
    CHECK(multinomial(3, parts) == 6);
    CHECK(falling_factorial(10, 3) == 720);
    CHECK(falling_factorial(10, 0) == 1);
  }
}

TEST_SUITE("special") {
  TEST_CASE("ln_factorial matches exact factorials up to 2000") {
    BigCount f = 1;
    double worst = 0.0;
    for (int N = 1; N <= 2000; ++N) {
      f *= N;
      const long double exact = ln(f);
      const long double approx = ln_factorial(N);
      const long double err = std::abs(approx - exact) / std::max<long double>(1.0L, std::abs(exact));
      worst = std::max(worst, static_cast<double>(err));
    }
    CHECK(worst <= 1e-12);
  }

  TEST_CASE("ln_gamma at half integers") {
    CHECK(ln_gamma(0.5L) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-13));
    CHECK(ln_gamma(1.0L) == doctest::Approx(0.0));
    CHECK(ln_gamma(7.5L) == doctest::Approx(std::lgamma(7.5)).epsilon(1e-13));
  }

  TEST_CASE("log binomials and multinomials") {
    CHECK(ln_binomial(100, 10) == doctest::Approx(std::log(17310309456440.0)).epsilon(1e-13));
    const std::int64_t parts[] = {2, 3, 5};
    CHECK(ln_multinomial(10, parts) == doctest::Approx(std::log(2520.0)).epsilon(1e-13));
    CHECK(ln_falling(100, 10) == doctest::Approx(static_cast<double>(ln(falling_factorial(100, 10)))).epsilon(1e-13));
  }
}

TEST_SUITE("log_value") {
  TEST_CASE("sign and zero") {
    CHECK(LogValue().is_zero());
    CHECK(LogValue::from_value(0.0L).sign() == 0);
    CHECK(LogValue::from_value(-2.0L).sign() == -1);
    CHECK(std::isinf(LogValue().ln()));
  }

  TEST_CASE("arithmetic") {
    const auto a = LogValue::from_value(3.0L);
    const auto b = LogValue::from_value(-5.0L);
    CHECK((a * b).value() == doctest::Approx(-15.0));
    CHECK((a / b).value() == doctest::Approx(-0.6));
    CHECK((a + b).value() == doctest::Approx(-2.0));
    CHECK((a - a).is_zero());
    CHECK(a.pow(2.0L).value() == doctest::Approx(9.0));
    CHECK(error_kind([&] { b.pow(0.5L); }) == ErrorKind::InvalidArgument);
  }

  TEST_CASE("addition is associative within tolerance") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int i = 0; i < 200; ++i) {
      const auto x = LogValue::from_ln(u(rng));
      const auto y = LogValue::from_ln(u(rng));
      const auto z = LogValue::from_ln(u(rng));
      CHECK(((x + y) + z).ln() == doctest::Approx(static_cast<double>((x + (y + z)).ln())).epsilon(1e-12));
    }
  }

  TEST_CASE("huge counts survive") {
    const auto v = LogValue::from_count(factorial(1000));
    CHECK(v.ln() == doctest::Approx(static_cast<double>(ln_factorial(1000))).epsilon(1e-14));
    CHECK(LogValue::from_value(3595724.92576L).decimal_approx() == "3.59572492576e+06");
    CHECK(LogValue::from_value(9.9999999999999L).decimal_approx() == "1.00000000000e+01");
  }
}

TEST_SUITE("spec") {
  TEST_CASE("make_spec examples") {
    const auto a = make_spec(2, 2, {1, 1});
    CHECK(a.column_degrees() == std::vector<std::int64_t>{1, 1});
    CHECK(a.density(0) == make_rational(1, 2));
    CHECK(a.density(1) == make_rational(1, 2));
    const auto b = make_spec(3, 3, {2, 1});
    CHECK(b.column_degrees() == std::vector<std::int64_t>{2, 1});
    CHECK(error_kind([] { make_spec(2, 4, {3, 1}); }) == ErrorKind::IntegralityViolation);
    CHECK(error_kind([] { make_spec(2, 4, {3, 2}); }) == ErrorKind::DegreeSumMismatch);
    CHECK(error_kind([] { make_spec(2, 2, {3, -1}); }) == ErrorKind::NegativeDegree);
    CHECK(error_kind([] { make_spec(0, 2, {2}); }) == ErrorKind::InvalidSpec);
    CHECK(error_kind([] { make_spec(2, 2, {}); }) == ErrorKind::InvalidSpec);
  }

  TEST_CASE("strict flag") {
    CHECK(make_spec(2, 2, {1, 1}).strict());
    CHECK_FALSE(make_spec(2, 2, {1, 0, 1}).strict());
    CHECK(make_spec(2, 2, {0, 2}).strict());
  }

  TEST_CASE("transpose examples") {
    const auto t = transpose_spec(make_spec(2, 4, {2, 2}));
    CHECK(t.m() == 4);
    CHECK(t.n() == 2);
    CHECK(t.row_degrees() == std::vector<std::int64_t>{1, 1});
    CHECK(transpose_spec(make_spec(3, 3, {2, 1})) == make_spec(3, 3, {2, 1}));
  }

  TEST_CASE("transpose twice is the identity on valid specs") {
    int checked = 0;
    for (int m = 1; m <= 8; ++m)
      for (int n = 1; n <= 8; ++n)
        for (int s1 = 0; s1 <= n; ++s1)
          for (int s2 = 0; s1 + s2 <= n; ++s2) {
            try {
              const auto spec = make_spec(m, n, {n - s1 - s2, s1, s2});
              CHECK(transpose_spec(transpose_spec(spec)) == spec);
              ++checked;
            } catch (const Error&) {
            }
          }
    CHECK(checked > 100);
  }
}

TEST_SUITE("graph") {
  TEST_CASE("construction") {
    const Edge edges[] = {{0, 0}, {1, 2}};
    const BipartiteGraph g(2, 3, edges);
    CHECK(g.edge_count() == 2);
    CHECK(g.has_edge(1, 2));
    CHECK_FALSE(g.has_edge(0, 1));
    const Edge dup[] = {{0, 0}, {0, 0}};
    CHECK(error_kind([&] { BipartiteGraph(2, 3, dup); }) == ErrorKind::InvalidArgument);
    const Edge out[] = {{0, 3}};
    CHECK(error_kind([&] { BipartiteGraph(2, 3, out); }) == ErrorKind::InvalidArgument);
  }

  TEST_CASE("wide rows span several words") {
    const auto g = BipartiteGraph::complete(3, 130);
    CHECK(g.words_per_row() == 3);
    CHECK(g.edge_count() == 390);
    CHECK(g.degree_v2(129) == 3);
  }

  TEST_CASE("validate_semiregular examples") {
    const int id[] = {0, 1, 2};
    CHECK(validate_semiregular(BipartiteGraph::matching(id), 1));
    const Edge three[] = {{0, 0}, {0, 1}, {1, 0}};
    CHECK_FALSE(validate_semiregular(BipartiteGraph(2, 2, three), 1));
    CHECK(validate_semiregular(BipartiteGraph::complete(2, 3), 3));
    CHECK_FALSE(validate_semiregular(BipartiteGraph::complete(2, 3), 2));
  }

  TEST_CASE("circulant") {
    const int shifts[] = {0, 1};
    const auto g = BipartiteGraph::circulant(4, shifts);
    CHECK(validate_semiregular(g, 2));
    CHECK(g.has_edge(3, 0));
  }

  TEST_CASE("json round trip") {
    const int shifts[] = {1};
    const auto g = BipartiteGraph::circulant(5, shifts);
    const std::string text = graph_to_json(g);
    CHECK(graph_from_json(text) == g);
    CHECK(graph_to_json(graph_from_json(text)) == text);
    CHECK(graph_from_json(R"({"m": 2, "n": 3, "edges": [[0, 2], [1, 0]]})").edge_count() == 2);
    CHECK(error_kind([] { graph_from_json(R"({"m": 2, "n": 2, "edges": [[0, 0], [0, 0]]})"); }) ==
          ErrorKind::InvalidArgument);
    CHECK(error_kind([] { graph_from_json("{not json"); }) == ErrorKind::ParseError);
    CHECK(error_kind([] { graph_from_json(R"({"m": 2, "edges": []})"); }) == ErrorKind::ParseError);
  }
}

TEST_SUITE("colouring") {
  TEST_CASE("validate_colouring examples") {
    CHECK(validate_colouring(ColourMatrix{{1, 0}, {0, 1}}, make_spec(2, 2, {1, 1})));
    CHECK_FALSE(validate_colouring(ColourMatrix{{1, 1}, {0, 0}}, make_spec(2, 2, {1, 1})));
    CHECK(validate_colouring(ColourMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, make_spec(3, 3, {2, 1})));
    CHECK(error_kind([] { validate_colouring(ColourMatrix{{1, 0}}, make_spec(2, 2, {1, 1})); }) ==
          ErrorKind::ShapeMismatch);
    CHECK(error_kind([] { validate_colouring(ColourMatrix{{2, 0}, {0, 2}}, make_spec(2, 2, {1, 1})); }) ==
          ErrorKind::ShapeMismatch);
  }

  TEST_CASE("row and column permutations preserve validity; colour classes are semiregular") {
    // A 4x6 colouring for (4, 6, [3, 3]) spec with t = [2, 2]: circulant pattern.
    const auto spec = make_spec(4, 6, {3, 3});
    std::vector<int> cells;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 6; ++j) cells.push_back(((j + (i % 2)) % 2));
    const ColourMatrix base(4, 6, cells);
    REQUIRE(validate_colouring(base, spec));
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<int> rp(4), cp(6);
      std::iota(rp.begin(), rp.end(), 0);
      std::iota(cp.begin(), cp.end(), 0);
      std::shuffle(rp.begin(), rp.end(), rng);
      std::shuffle(cp.begin(), cp.end(), rng);
      std::vector<int> permuted;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 6; ++j) permuted.push_back(base.at(rp[i], cp[j]));
      const ColourMatrix c(4, 6, permuted);
      CHECK(validate_colouring(c, spec));
      for (int colour = 0; colour <= spec.k(); ++colour) {
        CHECK(validate_semiregular(c.factor(colour), spec.row_degrees()[colour]));
      }
    }
  }
}

TEST_SUITE("rng") {
  // Known-answer vectors from the Random123 distribution.
  TEST_CASE("philox4x32-10 known answers") {
    using C = Philox4x32::Counter;
    CHECK(Philox4x32::block({0, 0, 0, 0}, {0, 0}) == C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
          C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
          C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
  }

  TEST_CASE("streams are reproducible and distinct") {
    PhiloxStream a(42, 3), b(42, 3), c(42, 4);
    bool differ = false;
    for (int i = 0; i < 16; ++i) {
      const auto x = a.next_u32();
      CHECK(x == b.next_u32());
      differ = differ || x != c.next_u32();
    }
    CHECK(differ);
  }

  TEST_CASE("bounded draws are in range and roughly uniform") {
    PhiloxStream s(1, 0);
    std::vector<int> hist(7, 0);
    for (int i = 0; i < 70000; ++i) {
      const auto x = s.below(7);
      REQUIRE(x < 7);
      ++hist[x];
    }
    for (int h : hist) CHECK(std::abs(h - 10000) < 500);
  }
}
