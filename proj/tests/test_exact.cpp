#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "semifactor/exact.hpp"
#include "semifactor/oracles.hpp"
#include "semifactor/switching.hpp"
#include "support.hpp"

using namespace semifactor;
using testing::error_kind;

namespace {

BigCount R(std::int64_t m, std::int64_t n, std::vector<std::int64_t> s, unsigned threads = 1) {
  return count_factorisations(make_spec(m, n, std::move(s)), {}, threads).count;
}

BipartiteGraph identity_matching(int n) {
  std::vector<int> id(static_cast<std::size_t>(n));
  std::iota(id.begin(), id.end(), 0);
  return BipartiteGraph::matching(id);
}

void compositions(std::int64_t total, std::size_t parts, std::vector<std::int64_t>& cur,
                  std::vector<std::vector<std::int64_t>>& out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (std::int64_t x = 0; x <= total; ++x) {
    cur.push_back(x);
    compositions(total - x, parts, cur, out);
    cur.pop_back();
  }
}

// Every valid spec with m, n <= max_side and up to max_k + 1 colours.
std::vector<FactorisationSpec> small_specs(int max_side, int max_k) {
  std::vector<FactorisationSpec> out;
  for (int m = 1; m <= max_side; ++m)
    for (int n = 1; n <= max_side; ++n)
      for (int k = 0; k <= max_k; ++k) {
        std::vector<std::vector<std::int64_t>> all;
        std::vector<std::int64_t> cur;
        compositions(n, static_cast<std::size_t>(k + 1), cur, all);
        for (const auto& s : all) {
          try {
            out.push_back(make_spec(m, n, s));
          } catch (const Error&) {
          }
        }
      }
  return out;
}

}  // namespace

TEST_SUITE("count_factorisations") {
  TEST_CASE("examples") {
    CHECK(R(2, 2, {1, 1}) == 2);
    CHECK(R(3, 3, {2, 1}) == 6);
    CHECK(R(4, 4, {2, 2}) == 90);
    CHECK(R(3, 3, {1, 1, 1}) == 12);
  }

  TEST_CASE("empty factors count as one way") {
    CHECK(R(3, 3, {3}) == 1);
    CHECK(R(2, 2, {2, 0}) == 1);
    CHECK(R(3, 3, {2, 0, 1}) == 6);
  }

  TEST_CASE("agrees with brute force on small specs") {
    const auto specs = small_specs(3, 2);
    CHECK(specs.size() > 50);
    for (const auto& spec : specs) {
      CAPTURE(spec.m());
      CAPTURE(spec.n());
      CHECK(count_factorisations(spec, {}, 1).count == brute_force_count(spec));
    }
  }

  TEST_CASE("agrees with the lattice convolution oracle") {
    for (const auto& spec : {make_spec(3, 6, {2, 2, 2}), make_spec(2, 6, {3, 3}), make_spec(4, 4, {2, 1, 1}),
                             make_spec(3, 9, {3, 6})}) {
      CHECK(count_factorisations(spec, {}, 1).count == oracles::lattice_hits(spec));
    }
  }

  TEST_CASE("transpose symmetry") {
    for (const auto& spec : {make_spec(2, 4, {2, 2}), make_spec(3, 6, {2, 2, 2}), make_spec(4, 6, {3, 3}),
                             make_spec(6, 3, {2, 1}), make_spec(4, 8, {2, 4, 2})}) {
      CHECK(count_factorisations(spec, {}, 1).count == count_factorisations(transpose_spec(spec), {}, 1).count);
    }
  }

  TEST_CASE("colour permutation symmetry") {
    std::vector<std::int64_t> s{1, 2, 3};
    const BigCount reference = R(6, 6, s);
    std::sort(s.begin(), s.end());
    do {
      CHECK(R(6, 6, s) == reference);
    } while (std::next_permutation(s.begin(), s.end()));
  }

  TEST_CASE("complement symmetry") {
    for (int s = 0; s <= 6; ++s) CHECK(R(6, 6, {6 - s, s}) == R(6, 6, {s, 6 - s}));
    CHECK(R(4, 8, {2, 6}) == R(4, 8, {6, 2}));
  }

  TEST_CASE("result is independent of thread count") {
    const auto spec = make_spec(7, 7, {3, 2, 2});
    const BigCount one = count_factorisations(spec, {}, 1).count;
    CHECK(count_factorisations(spec, {}, 2).count == one);
    CHECK(count_factorisations(spec, {}, 5).count == one);
  }

  TEST_CASE("budget exhaustion is an error") {
    CountBudget tiny;
    tiny.max_states = 2;
    try {
      count_factorisations(make_spec(6, 6, {2, 2, 2}), tiny, 1);
      FAIL("expected BudgetExceeded");
    } catch (const BudgetExceeded& e) {
      CHECK(e.kind() == ErrorKind::BudgetExceeded);
      CHECK(e.states_explored() >= 2);
    }
  }
}

TEST_SUITE("brute_force_count") {
  TEST_CASE("examples") {
    CHECK(brute_force_count(make_spec(2, 2, {1, 1})) == 2);
    CHECK(brute_force_count(make_spec(2, 2, {2, 0})) == 1);
    CHECK(brute_force_count(make_spec(3, 3, {1, 1, 1})) == 12);
  }

  TEST_CASE("guard") {
    CHECK(error_kind([] { brute_force_count(make_spec(8, 8, {2, 2, 2, 2})); }) == ErrorKind::TooLarge);
  }
}

TEST_SUITE("latin") {
  TEST_CASE("examples") {
    CHECK(count_latin_rectangles(5, 1).count == 120);
    CHECK(count_latin_rectangles(3, 2).count == 12);
    CHECK(count_latin_rectangles(4, 3).count == 576);
    CHECK(count_latin_rectangles(4, 4).count == 576);
  }

  TEST_CASE("matches row-by-row backtracking") {
    for (int n = 1; n <= 6; ++n)
      for (int k = 1; k <= n; ++k) CHECK(count_latin_rectangles(n, k, {}, 1).count == oracles::latin_rectangles_by_rows(n, k));
  }

  TEST_CASE("matches the general counter") {
    for (int n = 1; n <= 5; ++n)
      for (int k = 1; k <= std::min(3, n); ++k) {
        std::vector<std::int64_t> s{n - k};
        s.insert(s.end(), static_cast<std::size_t>(k), 1);
        CHECK(count_latin_rectangles(n, k, {}, 1).count == R(n, n, s));
      }
  }

  TEST_CASE("two rows are derangement counts") {
    for (int n = 2; n <= 9; ++n) CHECK(count_latin_rectangles(n, 2).count == factorial(n) * oracles::derangements(n));
  }

  TEST_CASE("pairwise disjoint permutation tuples") {
    // The oracle fixes the first row to the identity.
    CHECK(factorial(6) * oracles::disjoint_permutation_tuples(6, 3) == count_latin_rectangles(6, 3).count);
    CHECK(factorial(5) * oracles::disjoint_permutation_tuples(5, 2) == count_latin_rectangles(5, 2).count);
  }

  TEST_CASE("7x7 Latin squares") { CHECK(count_latin_rectangles(7, 7).count == BigCount("61479419904000")); }

  TEST_CASE("k out of range") {
    CHECK(error_kind([] { count_latin_rectangles(4, 0); }) == ErrorKind::KOutOfRange);
    CHECK(error_kind([] { count_latin_rectangles(4, 5); }) == ErrorKind::KOutOfRange);
  }
}

TEST_SUITE("extensions") {
  TEST_CASE("examples") {
    CHECK(count_disjoint_extensions(identity_matching(3), 1).count == 2);
    CHECK(count_disjoint_extensions(identity_matching(5), 1).count == 44);
    CHECK(count_disjoint_extensions(BipartiteGraph::complete(2, 2), 1).count == 0);
  }

  TEST_CASE("matchings avoiding a matching are derangements") {
    for (int n = 1; n <= 9; ++n) CHECK(count_disjoint_extensions(identity_matching(n), 1).count == oracles::derangements(n));
  }

  TEST_CASE("empty forbidden graph gives all semiregular graphs") {
    CHECK(count_disjoint_extensions(BipartiteGraph(4, 4), 2).count == 90);
    CHECK(count_disjoint_extensions(BipartiteGraph(3, 6), 2).count == R(3, 6, {4, 2}));
  }

  TEST_CASE("summing over D recovers three-factor counts") {
    struct Case {
      int m, n, s_d, s_h;
    };
    for (const Case c : {Case{3, 3, 1, 1}, Case{4, 4, 1, 1}, Case{4, 4, 2, 1}, Case{4, 4, 1, 2}, Case{2, 4, 2, 2},
                         Case{4, 2, 1, 1}, Case{3, 3, 1, 2}}) {
      CAPTURE(c.m);
      CAPTURE(c.n);
      CAPTURE(c.s_d);
      CAPTURE(c.s_h);
      BigCount total = 0;
      std::uint64_t graphs = 0;
      for_each_semiregular(c.m, c.n, c.s_d, [&](const BipartiteGraph& d) {
        total += count_disjoint_extensions(d, c.s_h).count;
        ++graphs;
        return true;
      });
      CHECK(BigCount(graphs) == R(c.m, c.n, {c.n - c.s_d, c.s_d}));
      CHECK(total == R(c.m, c.n, {c.n - c.s_d - c.s_h, c.s_d, c.s_h}));
    }
  }

  TEST_CASE("argument checks") {
    const int id[] = {0, 1, 2};
    CHECK(error_kind([&] { count_disjoint_extensions(BipartiteGraph::matching(id), 4); }) ==
          ErrorKind::InvalidArgument);
    CHECK(error_kind([] { count_disjoint_extensions(BipartiteGraph(2, 4), 1); }) == ErrorKind::IntegralityViolation);
    const Edge edges[] = {{0, 0}};
    CHECK(error_kind([&] { count_disjoint_extensions(BipartiteGraph(2, 2, edges), 1); }) ==
          ErrorKind::InvalidArgument);
  }
}

TEST_SUITE("relabelling") {
  TEST_CASE("examples") {
    CHECK(exact_disjoint_probability(identity_matching(3), identity_matching(3)) == make_rational(1, 3));
    CHECK(exact_disjoint_probability(identity_matching(4), identity_matching(4)) == make_rational(9, 24));
    CHECK(exact_disjoint_probability(BipartiteGraph::complete(2, 2), identity_matching(2)) == 0);
  }

  TEST_CASE("edgeless graph is always disjoint") {
    CHECK(exact_disjoint_probability(BipartiteGraph(3, 4), BipartiteGraph::complete(3, 4)) == 1);
  }

  TEST_CASE("invariant under fixed relabellings of either graph") {
    const int shifts[] = {0, 2};
    const auto d = BipartiteGraph::circulant(5, shifts);
    const auto h = identity_matching(5);
    const Rational base = exact_disjoint_probability(d, h, 1);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 4; ++trial) {
      Labeling lab = Labeling::identity(5, 5);
      std::shuffle(lab.sigma.begin(), lab.sigma.end(), rng);
      std::shuffle(lab.tau.begin(), lab.tau.end(), rng);
      CHECK(exact_disjoint_probability(relabel(d, lab), h, 1) == base);
      CHECK(exact_disjoint_probability(d, relabel(h, lab), 1) == base);
    }
  }

  TEST_CASE("thread count does not matter") {
    const int shifts[] = {0, 1};
    const auto d = BipartiteGraph::circulant(6, shifts);
    CHECK(exact_disjoint_probability(d, d, 1) == exact_disjoint_probability(d, d, 3));
  }

  TEST_CASE("guards") {
    CHECK(error_kind([] { exact_disjoint_probability(BipartiteGraph(2, 3), BipartiteGraph(3, 2)); }) ==
          ErrorKind::ShapeMismatch);
    CHECK(error_kind([] { exact_disjoint_probability(BipartiteGraph(8, 8), BipartiteGraph(8, 8)); }) ==
          ErrorKind::TooLarge);
  }
}

TEST_SUITE("average_split_count") {
  TEST_CASE("examples") {
    const std::int64_t one_one[] = {1, 1};
    CHECK(average_split_count(3, 3, one_one) == 2);
    CHECK(average_split_count(2, 2, one_one) == 2);
    const std::int64_t single[] = {2};
    CHECK(average_split_count(4, 4, single) == 1);
  }

  TEST_CASE("ratio of the two counts") {
    const std::int64_t sub[] = {1, 2};
    Rational expected(R(6, 6, {3, 1, 2}), R(6, 6, {3, 3}));
    expected.canonicalize();
    CHECK(average_split_count(6, 6, sub) == expected);
  }
}

TEST_SUITE("semiregular walk") {
  TEST_CASE("visits exactly the semiregular graphs") {
    std::uint64_t seen = 0;
    for_each_semiregular(4, 6, 3, [&](const BipartiteGraph& g) {
      CHECK(validate_semiregular(g, 3));
      ++seen;
      return true;
    });
    CHECK(BigCount(seen) == R(4, 6, {3, 3}));
  }

  TEST_CASE("early stop") {
    std::uint64_t seen = 0;
    for_each_semiregular(4, 4, 2, [&](const BipartiteGraph&) { return ++seen < 5; });
    CHECK(seen == 5);
  }
}
