#include <algorithm>

#include "semifactor/error.hpp"
#include "semifactor/switching.hpp"

namespace semifactor {

namespace {

int swap_if(int x, int p, int q) { return x == p ? q : (x == q ? p : x); }

// Does the switched graph share exactly `expected` with d, where `expected`
// is the current shared set with (a, b) toggled?
bool lands_on(const BipartiteGraph& d, const BipartiteGraph& h, const SwitchMove& mv, bool ab_shared_after) {
  for (int u = 0; u < d.m(); ++u) {
    const int hu = swap_if(u, mv.a, mv.e);
    for (int v = 0; v < d.n(); ++v) {
      const bool shared_now = d.has_edge(u, v) && h.has_edge(u, v);
      const bool shared_after = d.has_edge(u, v) && h.has_edge(hu, swap_if(v, mv.b, mv.f));
      const bool want = (u == mv.a && v == mv.b) ? ab_shared_after : shared_now;
      if (shared_after != want) return false;
    }
  }
  return true;
}

}  // namespace

BipartiteGraph apply_switch(const BipartiteGraph& h_labeled, const SwitchMove& move) {
  std::vector<Edge> edges = h_labeled.edges();
  for (auto& [u, v] : edges) {
    u = swap_if(u, move.a, move.e);
    v = swap_if(v, move.b, move.f);
  }
  return BipartiteGraph(h_labeled.m(), h_labeled.n(), edges);
}

Labeling apply_switch(const Labeling& lab, const SwitchMove& move) {
  Labeling out = lab;
  for (int& x : out.sigma) x = swap_if(x, move.a, move.e);
  for (int& x : out.tau) x = swap_if(x, move.b, move.f);
  return out;
}

std::vector<SwitchMove> enumerate_switchings(const BipartiteGraph& d, const BipartiteGraph& h_labeled,
                                             SwitchDirection direction) {
  if (d.m() != h_labeled.m() || d.n() != h_labeled.n()) {
    throw Error(ErrorKind::ShapeMismatch, "graphs differ in shape");
  }
  const BipartiteGraph& h = h_labeled;
  const bool forward = direction == SwitchDirection::Forward;
  std::vector<SwitchMove> moves;
  for (int a = 0; a < d.m(); ++a) {
    for (int b = 0; b < d.n(); ++b) {
      if (!d.has_edge(a, b) || h.has_edge(a, b) != forward) continue;
      for (int e = 0; e < d.m(); ++e) {
        if (e == a) continue;
        for (int f = 0; f < d.n(); ++f) {
          if (f == b || d.has_edge(e, f)) continue;
          if (!forward && !h.has_edge(e, f)) continue;
          const SwitchMove mv{direction, a, e, b, f};
          if (lands_on(d, h, mv, !forward)) moves.push_back(mv);
        }
      }
    }
  }
  return moves;
}

SwitchingTotals switching_totals(const BipartiteGraph& d, const BipartiteGraph& h) {
  if (d.m() != h.m() || d.n() != h.n()) throw Error(ErrorKind::ShapeMismatch, "graphs differ in shape");
  if (factorial(static_cast<std::uint64_t>(d.m())) * factorial(static_cast<std::uint64_t>(d.n())) > 1'000'000) {
    throw Error(ErrorKind::TooLarge, "more than 1e6 labelings");
  }
  const auto top = static_cast<std::size_t>(std::min(d.edge_count(), h.edge_count()));
  SwitchingTotals out{std::vector<BigCount>(top + 1, 0), std::vector<BigCount>(top + 1, 0)};
  Labeling lab = Labeling::identity(d.m(), d.n());
  do {
    do {
      const BipartiteGraph placed = relabel(h, lab);
      if (has_common_two_path(d, placed)) continue;
      const auto t = static_cast<std::size_t>(common_edges(d, placed));
      if (t >= 1) {
        for (const auto& mv : enumerate_switchings(d, placed, SwitchDirection::Forward)) {
          if (!has_common_two_path(d, apply_switch(placed, mv))) out.forward[t] += 1;
        }
      }
      if (t + 1 > top) continue;
      for (const auto& mv : enumerate_switchings(d, placed, SwitchDirection::Reverse)) {
        if (!has_common_two_path(d, apply_switch(placed, mv))) out.reverse[t + 1] += 1;
      }
    } while (std::next_permutation(lab.tau.begin(), lab.tau.end()));
  } while (std::next_permutation(lab.sigma.begin(), lab.sigma.end()));
  return out;
}

}  // namespace semifactor
