#include <cmath>
#include <numeric>

#include "semifactor/error.hpp"
#include "semifactor/parallel.hpp"
#include "semifactor/rng.hpp"
#include "semifactor/switching.hpp"

namespace semifactor {

namespace {

void shuffle(std::vector<int>& p, PhiloxStream& rng) {
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = p.size(); i > 1; --i) {
    const std::uint32_t j = rng.below(static_cast<std::uint32_t>(i));
    std::swap(p[i - 1], p[j]);
  }
}

}  // namespace

MonteCarloResult monte_carlo_disjoint(std::span<const BipartiteGraph> graphs, std::uint64_t trials,
                                      std::uint64_t seed, unsigned threads) {
  if (graphs.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two graphs");
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "need at least one trial");
  const int m = graphs[0].m();
  const int n = graphs[0].n();
  for (const auto& g : graphs) {
    if (g.m() != m || g.n() != n) throw Error(ErrorKind::ShapeMismatch, "graphs differ in shape");
  }

  // Relabelling graph 0 as well would only conjugate the whole picture, so it
  // stays fixed and the others get independent uniform labelings.
  const int words = graphs[0].words_per_row();
  std::vector<std::uint64_t> base(static_cast<std::size_t>(m) * words);
  for (int u = 0; u < m; ++u)
    for (int w = 0; w < words; ++w) base[static_cast<std::size_t>(u) * words + w] = graphs[0].row(u)[w];
  std::vector<std::vector<Edge>> edge_lists;
  for (std::size_t g = 1; g < graphs.size(); ++g) edge_lists.push_back(graphs[g].edges());

  const unsigned workers = resolve_threads(threads);
  std::vector<std::uint64_t> hits(workers, 0);
  parallel_blocks(trials, workers, [&](std::size_t begin, std::size_t end, unsigned worker) {
    std::vector<int> sigma(static_cast<std::size_t>(m));
    std::vector<int> tau(static_cast<std::size_t>(n));
    std::vector<std::uint64_t> used(base.size());
    std::uint64_t local = 0;
    for (std::size_t trial = begin; trial < end; ++trial) {
      PhiloxStream rng(seed, trial);
      std::copy(base.begin(), base.end(), used.begin());
      bool disjoint = true;
      for (const auto& edges : edge_lists) {
        shuffle(sigma, rng);
        shuffle(tau, rng);
        for (auto [u, v] : edges) {
          const int c = tau[v];
          std::uint64_t& word = used[static_cast<std::size_t>(sigma[u]) * words + (c >> 6)];
          const std::uint64_t bit = std::uint64_t{1} << (c & 63);
          if (word & bit) {
            disjoint = false;
            break;
          }
          word |= bit;
        }
        if (!disjoint) break;
      }
      if (disjoint) ++local;
    }
    hits[worker] = local;
  });

  MonteCarloResult out;
  out.trials = trials;
  out.successes = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
  out.estimate = static_cast<double>(out.successes) / static_cast<double>(trials);
  out.std_error = std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(trials));
  return out;
}

}  // namespace semifactor
