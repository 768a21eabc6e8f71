#include <algorithm>
#include <numeric>

#include "semifactor/error.hpp"
#include "semifactor/exact.hpp"
#include "semifactor/parallel.hpp"

namespace semifactor {

Rational exact_disjoint_probability(const BipartiteGraph& d, const BipartiteGraph& h, unsigned threads) {
  if (d.m() != h.m() || d.n() != h.n()) throw Error(ErrorKind::ShapeMismatch, "graphs differ in shape");
  const int m = d.m();
  const int n = d.n();
  if (m > 7 || n > 7) throw Error(ErrorKind::TooLarge, "relabelling enumeration is limited to m, n <= 7");

  std::vector<std::vector<int>> column_perms;
  std::vector<int> tau(static_cast<std::size_t>(n));
  std::iota(tau.begin(), tau.end(), 0);
  do {
    column_perms.push_back(tau);
  } while (std::next_permutation(tau.begin(), tau.end()));

  std::vector<std::uint64_t> d_rows(static_cast<std::size_t>(m));
  for (int u = 0; u < m; ++u) d_rows[u] = n ? d.row(u)[0] : 0;

  const unsigned workers = resolve_threads(threads);
  std::vector<std::uint64_t> hits(workers, 0);
  parallel_blocks(column_perms.size(), workers, [&](std::size_t begin, std::size_t end, unsigned w) {
    std::vector<std::uint64_t> moved(static_cast<std::size_t>(m));
    std::vector<int> sigma(static_cast<std::size_t>(m));
    std::uint64_t local = 0;
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
        bool clash = false;
        for (int u = 0; u < m && !clash; ++u) clash = (d_rows[sigma[u]] & moved[u]) != 0;
        if (!clash) ++local;
      } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
    hits[w] = local;
  });

  const std::uint64_t total_hits = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  Rational out(BigCount(static_cast<unsigned long>(total_hits)),
               factorial(static_cast<std::uint64_t>(m)) * factorial(static_cast<std::uint64_t>(n)));
  out.canonicalize();
  return out;
}

namespace {

class SemiregularWalker {
 public:
  SemiregularWalker(int m, int n, int d1, const std::function<bool(const BipartiteGraph&)>& visit)
      : m_(m), n_(n), d2_(d1 * m / n), residual_(static_cast<std::size_t>(m), d1), visit_(visit) {}

  std::uint64_t run() {
    column(0);
    return visited_;
  }

 private:
  void column(int v) {
    if (stopped_) return;
    if (v == n_) {
      ++visited_;
      if (!visit_(BipartiteGraph(m_, n_, edges_))) stopped_ = true;
      return;
    }
    pick(v, 0, d2_);
  }

  void pick(int v, int from, int left) {
    if (stopped_) return;
    if (left == 0) {
      // Every row must still fit its residual into the columns after v.
      for (int u = 0; u < m_; ++u)
        if (residual_[u] > n_ - v - 1) return;
      column(v + 1);
      return;
    }
    for (int u = from; u <= m_ - left; ++u) {
      if (residual_[u] == 0) continue;
      --residual_[u];
      edges_.emplace_back(u, v);
      pick(v, u + 1, left - 1);
      edges_.pop_back();
      ++residual_[u];
    }
  }

  int m_;
  int n_;
  int d2_;
  std::vector<int> residual_;
  std::vector<Edge> edges_;
  const std::function<bool(const BipartiteGraph&)>& visit_;
  std::uint64_t visited_ = 0;
  bool stopped_ = false;
};

}  // namespace

std::uint64_t for_each_semiregular(int m, int n, int d1,
                                   const std::function<bool(const BipartiteGraph&)>& visit) {
  if (m < 1 || n < 1 || d1 < 0 || d1 > n) throw Error(ErrorKind::InvalidArgument, "bad semiregular parameters");
  if ((d1 * m) % n != 0) throw Error(ErrorKind::IntegralityViolation, "d1 * m / n is not an integer");
  return SemiregularWalker(m, n, d1, visit).run();
}

}  // namespace semifactor
