#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "semifactor/error.hpp"
#include "semifactor/parallel.hpp"
#include "semifactor/switching.hpp"

namespace semifactor {

namespace {

bool is_permutation_of_range(const std::vector<int>& p) {
  std::vector<char> seen(p.size(), 0);
  for (int x : p) {
    if (x < 0 || x >= static_cast<int>(p.size()) || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

void require_same_shape(const BipartiteGraph& d, const BipartiteGraph& h) {
  if (d.m() != h.m() || d.n() != h.n()) throw Error(ErrorKind::ShapeMismatch, "graphs differ in shape");
}

}  // namespace

Labeling Labeling::identity(int m, int n) {
  Labeling lab;
  lab.sigma.resize(static_cast<std::size_t>(m));
  lab.tau.resize(static_cast<std::size_t>(n));
  std::iota(lab.sigma.begin(), lab.sigma.end(), 0);
  std::iota(lab.tau.begin(), lab.tau.end(), 0);
  return lab;
}

Labeling Labeling::inverse() const {
  validate();
  Labeling out;
  out.sigma.resize(sigma.size());
  out.tau.resize(tau.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) out.sigma[sigma[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < tau.size(); ++i) out.tau[tau[i]] = static_cast<int>(i);
  return out;
}

void Labeling::validate() const {
  if (!is_permutation_of_range(sigma) || !is_permutation_of_range(tau)) {
    throw Error(ErrorKind::InvalidArgument, "labeling maps must be permutations");
  }
}

BipartiteGraph relabel(const BipartiteGraph& h, const Labeling& lab) {
  if (static_cast<int>(lab.sigma.size()) != h.m() || static_cast<int>(lab.tau.size()) != h.n()) {
    throw Error(ErrorKind::LengthMismatch, "labeling lengths do not match the graph");
  }
  lab.validate();
  std::vector<Edge> edges = h.edges();
  for (auto& [u, v] : edges) {
    u = lab.sigma[u];
    v = lab.tau[v];
  }
  return BipartiteGraph(h.m(), h.n(), edges);
}

int common_edges(const BipartiteGraph& d, const BipartiteGraph& h) { return common_edge_count(d, h); }

bool has_common_two_path(const BipartiteGraph& d, const BipartiteGraph& h) {
  require_same_shape(d, h);
  const auto words = static_cast<std::size_t>(d.words_per_row());
  std::vector<std::uint64_t> seen(words, 0);
  for (int u = 0; u < d.m(); ++u) {
    int in_row = 0;
    for (std::size_t w = 0; w < words; ++w) {
      const std::uint64_t shared = d.row(u)[w] & h.row(u)[w];
      in_row += std::popcount(shared);
      if (seen[w] & shared) return true;
      seen[w] |= shared;
    }
    if (in_row >= 2) return true;
  }
  return false;
}

std::int64_t m_threshold(std::int64_t m, std::int64_t n, const Rational& lam_d, const Rational& lam_h) {
  const long double x = to_long_double(lam_d * lam_h * m * n) * std::log(static_cast<long double>(n));
  return static_cast<std::int64_t>(std::ceil(x));
}

BigCount LabelingClassTable::total() const {
  BigCount sum = beyond + excluded;
  for (const auto& c : counts) sum += c;
  return sum;
}

LabelingClassTable classify_labelings(const BipartiteGraph& d, const BipartiteGraph& h,
                                      std::optional<int> t_max, bool enforce_no_two_path,
                                      unsigned threads) {
  require_same_shape(d, h);
  const int m = d.m();
  const int n = d.n();
  if (factorial(static_cast<std::uint64_t>(m)) * factorial(static_cast<std::uint64_t>(n)) > 100'000'000) {
    throw Error(ErrorKind::TooLarge, "more than 1e8 labelings");
  }

  const std::int64_t cells = static_cast<std::int64_t>(m) * n;
  LabelingClassTable table;
  table.two_path_enforced = enforce_no_two_path;
  table.M = m_threshold(m, n, Rational(d.edge_count(), cells), Rational(h.edge_count(), cells));
  const int most_common = static_cast<int>(std::min(d.edge_count(), h.edge_count()));
  const int limit = t_max ? *t_max : static_cast<int>(std::min<std::int64_t>(table.M, most_common));
  if (limit < 0) throw Error(ErrorKind::InvalidArgument, "t_max must be nonnegative");

  std::vector<std::vector<int>> column_perms;
  std::vector<int> tau(static_cast<std::size_t>(n));
  std::iota(tau.begin(), tau.end(), 0);
  do {
    column_perms.push_back(tau);
  } while (std::next_permutation(tau.begin(), tau.end()));

  std::vector<std::uint64_t> d_rows(static_cast<std::size_t>(m));
  for (int u = 0; u < m; ++u) d_rows[u] = d.row(u)[0];

  struct Tally {
    std::vector<std::uint64_t> hist;
    std::uint64_t excluded = 0;
  };
  const unsigned workers = resolve_threads(threads);
  std::vector<Tally> tallies(workers, Tally{std::vector<std::uint64_t>(most_common + 1, 0), 0});

  parallel_blocks(column_perms.size(), workers, [&](std::size_t begin, std::size_t end, unsigned w) {
    Tally& tally = tallies[w];
    std::vector<std::uint64_t> moved(static_cast<std::size_t>(m));
    std::vector<int> sigma(static_cast<std::size_t>(m));
    for (std::size_t p = begin; p < end; ++p) {
      const auto& perm = column_perms[p];
      for (int u = 0; u < m; ++u) {
        std::uint64_t bits = 0;
        for (int v = 0; v < n; ++v)
          if (h.has_edge(u, v)) bits |= std::uint64_t{1} << perm[v];
        moved[u] = bits;
      }
      std::iota(sigma.begin(), sigma.end(), 0);
      do {
        int shared = 0;
        bool two_path = false;
        std::uint64_t seen = 0;
        for (int u = 0; u < m; ++u) {
          const std::uint64_t common = d_rows[sigma[u]] & moved[u];
          const int c = std::popcount(common);
          shared += c;
          two_path = two_path || c >= 2 || (seen & common) != 0;
          seen |= common;
        }
        if (enforce_no_two_path && two_path) {
          ++tally.excluded;
        } else {
          ++tally.hist[shared];
        }
      } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
  });

  std::vector<std::uint64_t> hist(most_common + 1, 0);
  std::uint64_t excluded = 0;
  for (const auto& tally : tallies) {
    for (int t = 0; t <= most_common; ++t) hist[t] += tally.hist[t];
    excluded += tally.excluded;
  }

  table.counts.assign(static_cast<std::size_t>(limit) + 1, BigCount(0));
  table.beyond = 0;
  table.T = 0;
  for (int t = 0; t <= most_common; ++t) {
    const BigCount c(static_cast<unsigned long>(hist[t]));
    if (t <= limit) {
      table.counts[t] = c;
    } else {
      table.beyond += c;
    }
    if (t < table.M) table.T += c;
  }
  table.excluded = BigCount(static_cast<unsigned long>(excluded));
  return table;
}

long double lrat_prediction(std::int64_t m, std::int64_t n, const Rational& lam_d,
                            const Rational& lam_h, std::int64_t t) {
  if (t < 1) throw Error(ErrorKind::InvalidArgument, "t must be at least 1");
  const Rational cells(m * n);
  const Rational value = (lam_d * cells - t + 1) * (lam_h * cells - t + 1) / (cells * t);
  return to_long_double(value);
}

}  // namespace semifactor
