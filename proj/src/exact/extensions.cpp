#include <algorithm>
#include <bit>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>

#include "budget.hpp"
#include "semifactor/error.hpp"
#include "semifactor/exact.hpp"

namespace semifactor {

namespace {

// Rows of V₁ that still look alike to the remaining columns: same forbidden
// pattern from the current column on, and the same residual degree.
struct RowGroup {
  std::vector<std::uint64_t> pattern;
  std::int64_t residual = 0;
  std::int64_t mult = 0;

  auto operator<=>(const RowGroup&) const = default;
};

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& key) const noexcept {
    return detail::hash_words(key.data(), key.size());
  }
};

class ExtensionCounter {
 public:
  ExtensionCounter(int n, std::int64_t column_demand, const CountBudget& budget)
      : n_(n), demand_(column_demand), guard_(budget, "count_disjoint_extensions") {}

  BigCount count(int column, std::vector<RowGroup> groups) {
    if (column == n_) return 1;
    std::vector<std::uint64_t> key{static_cast<std::uint64_t>(column)};
    for (const auto& g : groups) {
      key.insert(key.end(), g.pattern.begin(), g.pattern.end());
      key.push_back(static_cast<std::uint64_t>(g.residual));
      key.push_back(static_cast<std::uint64_t>(g.mult));
    }
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if ((memo_.size() & 255) == 0) guard_.check_time();

    BigCount total = 0;
    std::vector<std::int64_t> take(groups.size(), 0);
    std::vector<std::int64_t> open(groups.size() + 1, 0);
    for (std::size_t g = groups.size(); g-- > 0;) {
      open[g] = open[g + 1] + (allowed(groups[g], column) ? groups[g].mult : 0);
    }
    choose(column, groups, take, open, 0, demand_, BigCount(1), total);
    memo_.emplace(std::move(key), total);
    guard_.add_states(1);
    return total;
  }

  std::uint64_t states() const { return guard_.states(); }

 private:
  static bool bit(const std::vector<std::uint64_t>& p, int v) { return (p[v / 64] >> (v % 64)) & 1U; }

  static bool allowed(const RowGroup& g, int column) { return g.residual > 0 && !bit(g.pattern, column); }

  void choose(int column, const std::vector<RowGroup>& groups, std::vector<std::int64_t>& take,
              const std::vector<std::int64_t>& open, std::size_t g, std::int64_t left,
              const BigCount& weight, BigCount& total) {
    if (left > open[g]) return;
    if (g == groups.size()) {
      if (auto next = advance(column, groups, take)) total += weight * count(column + 1, std::move(*next));
      return;
    }
    const std::int64_t most = allowed(groups[g], column) ? std::min(left, groups[g].mult) : 0;
    for (std::int64_t x = 0; x <= most; ++x) {
      take[g] = x;
      choose(column, groups, take, open, g + 1, left - x,
             weight * binomial(static_cast<std::uint64_t>(groups[g].mult), static_cast<std::uint64_t>(x)),
             total);
    }
    take[g] = 0;
  }

  // Splits each group by whether its rows took the current column, drops the
  // column from the patterns, and merges groups that became identical. Empty
  // when some row can no longer reach its residual degree.
  std::optional<std::vector<RowGroup>> advance(int column, const std::vector<RowGroup>& groups,
                                const std::vector<std::int64_t>& take) const {
    std::vector<RowGroup> next;
    const int remaining_columns = n_ - column - 1;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      RowGroup base = groups[g];
      base.pattern[column / 64] &= ~(std::uint64_t{1} << (column % 64));
      int forbidden = 0;
      for (auto w : base.pattern) forbidden += std::popcount(w);
      const std::int64_t reachable = remaining_columns - forbidden;
      if (take[g] > 0) {
        RowGroup used = base;
        used.residual -= 1;
        used.mult = take[g];
        if (used.residual > reachable) return std::nullopt;
        next.push_back(std::move(used));
      }
      if (groups[g].mult - take[g] > 0) {
        base.mult = groups[g].mult - take[g];
        if (base.residual > reachable) return std::nullopt;
        next.push_back(std::move(base));
      }
    }
    return merge(std::move(next));
  }

 public:
  static std::vector<RowGroup> merge(std::vector<RowGroup> groups) {
    std::sort(groups.begin(), groups.end(), [](const RowGroup& a, const RowGroup& b) {
      return std::tie(a.pattern, a.residual) < std::tie(b.pattern, b.residual);
    });
    std::vector<RowGroup> out;
    for (auto& g : groups) {
      if (!out.empty() && out.back().pattern == g.pattern && out.back().residual == g.residual) {
        out.back().mult += g.mult;
      } else {
        out.push_back(std::move(g));
      }
    }
    return out;
  }

 private:
  int n_;
  std::int64_t demand_;
  detail::BudgetGuard guard_;
  std::unordered_map<std::vector<std::uint64_t>, BigCount, KeyHash> memo_;
};

}  // namespace

CountResult count_disjoint_extensions(const BipartiteGraph& d, std::int64_t s_h,
                                      const CountBudget& budget) {
  const int m = d.m();
  const int n = d.n();
  if (m < 1 || n < 1) throw Error(ErrorKind::InvalidArgument, "empty vertex set");
  if (s_h < 0 || s_h > n) throw Error(ErrorKind::InvalidArgument, "degree s_h out of range");
  if ((s_h * m) % n != 0) {
    throw Error(ErrorKind::IntegralityViolation, "s_h * m / n is not an integer");
  }
  if (!validate_semiregular(d, d.degree_v1(0))) {
    throw Error(ErrorKind::InvalidArgument, "forbidden graph D is not semiregular");
  }
  ExtensionCounter counter(n, s_h * m / n, budget);
  std::vector<RowGroup> groups;
  for (int u = 0; u < m; ++u) {
    RowGroup g;
    g.pattern.assign(d.row(u).begin(), d.row(u).end());
    g.residual = s_h;
    g.mult = 1;
    if (s_h > n - d.degree_v1(u)) return {BigCount(0), 0};
    groups.push_back(std::move(g));
  }
  CountResult result;
  result.count = counter.count(0, ExtensionCounter::merge(std::move(groups)));
  result.states_explored = counter.states();
  return result;
}

}  // namespace semifactor
