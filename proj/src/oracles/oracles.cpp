#include "semifactor/oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "semifactor/error.hpp"

namespace semifactor::oracles {

BigCount derangements(int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "n must be nonnegative");
  BigCount prev2 = 1;  // D_0
  BigCount prev1 = 0;  // D_1
  if (n == 0) return prev2;
  for (int i = 2; i <= n; ++i) {
    BigCount next = BigCount(i - 1) * (prev1 + prev2);
    prev2 = prev1;
    prev1 = next;
  }
  return prev1;
}

BigCount lattice_hits(const FactorisationSpec& spec) {
  const int m = static_cast<int>(spec.m());
  const int k = spec.k();
  const auto& s = spec.row_degrees();
  const auto& t = spec.column_degrees();

  // Every arrangement of one column: colour per row.
  std::vector<int> word;
  for (int c = 0; c <= k; ++c) word.insert(word.end(), t[c], c);
  std::vector<std::vector<int>> patterns;
  do {
    patterns.push_back(word);
  } while (std::next_permutation(word.begin(), word.end()));

  // State: counts X_{i,c} for rows 0..m-2 and colours 1..k.
  std::map<std::vector<int>, BigCount> dist;
  dist.emplace(std::vector<int>(static_cast<std::size_t>((m - 1) * k), 0), BigCount(1));
  for (std::int64_t col = 0; col < spec.n(); ++col) {
    std::map<std::vector<int>, BigCount> next;
    for (const auto& [state, ways] : dist) {
      for (const auto& p : patterns) {
        std::vector<int> moved = state;
        bool ok = true;
        for (int i = 0; i < m - 1 && ok; ++i) {
          if (p[i] == 0) continue;
          int& x = moved[i * k + p[i] - 1];
          ok = ++x <= s[p[i]];
        }
        if (ok) next[moved] += ways;
      }
    }
    dist = std::move(next);
  }
  std::vector<int> target;
  for (int i = 0; i < m - 1; ++i)
    for (int c = 1; c <= k; ++c) target.push_back(static_cast<int>(s[c]));
  const auto it = dist.find(target);
  return it == dist.end() ? BigCount(0) : it->second;
}

Rational lattice_hit_probability(const FactorisationSpec& spec) {
  BigCount per_column = 1;
  {
    // multinomial(m; t) computed from factorials directly.
    BigCount num = 1;
    for (std::int64_t i = 2; i <= spec.m(); ++i) num *= BigCount(static_cast<unsigned long>(i));
    BigCount den = 1;
    for (auto part : spec.column_degrees())
      for (std::int64_t i = 2; i <= part; ++i) den *= BigCount(static_cast<unsigned long>(i));
    per_column = num / den;
  }
  BigCount space = 1;
  for (std::int64_t col = 0; col < spec.n(); ++col) space *= per_column;
  Rational out(lattice_hits(spec), space);
  out.canonicalize();
  return out;
}

BigCount latin_rectangles_by_rows(int n, int k) {
  if (n < 1 || k < 1 || k > n || n > 16) throw Error(ErrorKind::InvalidArgument, "need 1 <= k <= n <= 16");
  std::vector<unsigned> column_used(static_cast<std::size_t>(n), 0);
  for (int c = 0; c < n; ++c) column_used[c] = 1u << c;  // row 0 is the identity
  std::uint64_t leaves = 0;

  std::function<void(int, int, unsigned)> fill = [&](int row, int col, unsigned row_used) {
    if (row == k) {
      ++leaves;
      return;
    }
    if (col == n) {
      fill(row + 1, 0, 0);
      return;
    }
    for (int sym = 0; sym < n; ++sym) {
      const unsigned bit = 1u << sym;
      if ((row_used & bit) || (column_used[col] & bit)) continue;
      column_used[col] |= bit;
      fill(row, col + 1, row_used | bit);
      column_used[col] &= ~bit;
    }
  };
  fill(1, 0, 0);

  BigCount out(static_cast<unsigned long>(leaves));
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

BigCount disjoint_permutation_tuples(int n, int g) {
  if (n < 1 || n > 10 || g < 2) throw Error(ErrorKind::InvalidArgument, "need n in 1..10 and g >= 2");
  std::vector<std::vector<int>> all;
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    all.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::vector<const std::vector<int>*> chosen{&all.front()};  // the identity
  std::function<std::uint64_t()> extend = [&]() -> std::uint64_t {
    if (static_cast<int>(chosen.size()) == g) return 1;
    std::uint64_t total = 0;
    for (const auto& q : all) {
      bool clash = false;
      for (const auto* r : chosen)
        for (int i = 0; i < n && !clash; ++i) clash = q[i] == (*r)[i];
      if (clash) continue;
      chosen.push_back(&q);
      total += extend();
      chosen.pop_back();
    }
    return total;
  };
  return BigCount(static_cast<unsigned long>(extend()));
}

}  // namespace semifactor::oracles
