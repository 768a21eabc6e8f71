#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "semifactor/bignum.hpp"
#include "semifactor/graph.hpp"

namespace semifactor {

/// σ permutes V₁ and τ permutes V₂; edge (u, v) goes to (σ(u), τ(v)).
struct Labeling {
  std::vector<int> sigma;
  std::vector<int> tau;

  static Labeling identity(int m, int n);
  Labeling inverse() const;
  /// Throws InvalidArgument unless both maps are bijections.
  void validate() const;

  friend bool operator==(const Labeling&, const Labeling&) = default;
};

/// Throws LengthMismatch when the maps do not fit h.
BipartiteGraph relabel(const BipartiteGraph& h, const Labeling& lab);

/// Same as `common_edge_count`.
int common_edges(const BipartiteGraph& d, const BipartiteGraph& h);

/// Some vertex on either side meets two shared edges.
bool has_common_two_path(const BipartiteGraph& d, const BipartiteGraph& h);

/// ⌈λ_d λ_h mn ln n⌉.
std::int64_t m_threshold(std::int64_t m, std::int64_t n, const Rational& lam_d, const Rational& lam_h);

/// Labelings of h grouped by the number t of edges shared with d.
struct LabelingClassTable {
  /// counts[t] = L(t) for 0 <= t <= t_max.
  std::vector<BigCount> counts;
  /// Labelings with more than t_max shared edges (and no common 2-path
  /// when the filter is on).
  BigCount beyond;
  /// Labelings dropped for having a common 2-path; zero when the filter is off.
  BigCount excluded;
  bool two_path_enforced = false;
  std::int64_t M = 0;
  /// Σ_{t<M} L(t), taken over all t, not only those up to t_max.
  BigCount T;

  int t_max() const { return static_cast<int>(counts.size()) - 1; }
  BigCount total() const;
};

/// Enumerates all m!·n! labelings of h (at most 1e8, else TooLarge). The
/// default t_max is min(M, |E(d)|, |E(h)|), with densities |E|/(mn).
LabelingClassTable classify_labelings(const BipartiteGraph& d, const BipartiteGraph& h,
                                      std::optional<int> t_max, bool enforce_no_two_path,
                                      unsigned threads = 0);

enum class SwitchDirection { Forward, Reverse };

/// The transposition pair (a e)(b f), with a, e in V₁ and b, f in V₂.
struct SwitchMove {
  SwitchDirection direction;
  int a, e, b, f;

  friend bool operator==(const SwitchMove&, const SwitchMove&) = default;
};

/// Swaps rows a, e and columns b, f of the labelled graph.
BipartiteGraph apply_switch(const BipartiteGraph& h_labeled, const SwitchMove& move);

/// The labeling reached from `lab` after the move acts on the labelled graph.
Labeling apply_switch(const Labeling& lab, const SwitchMove& move);

/// All moves of the given direction valid for this labelled H, each checked
/// by applying it.
std::vector<SwitchMove> enumerate_switchings(const BipartiteGraph& d, const BipartiteGraph& h_labeled,
                                             SwitchDirection direction);

/// (λ_d mn − t + 1)(λ_h mn − t + 1) / (t mn).
long double lrat_prediction(std::int64_t m, std::int64_t n, const Rational& lam_d,
                            const Rational& lam_h, std::int64_t t);

struct MonteCarloResult {
  double estimate;
  double std_error;
  std::uint64_t successes;
  std::uint64_t trials;
};

/// Fraction of trials in which independently relabelled copies of the graphs
/// are pairwise edge-disjoint. Trial i draws from its own stream keyed by
/// (seed, i), so the result does not depend on `threads`.
MonteCarloResult monte_carlo_disjoint(std::span<const BipartiteGraph> graphs, std::uint64_t trials,
                                      std::uint64_t seed, unsigned threads = 0);

/// Move totals over the full label space, for the double-counting identity.
/// forward[t] sums the forward moves out of 𝓛(t); reverse[t] sums the
/// reverse moves out of 𝓛(t − 1) that land in 𝓛(t). Index 0 is unused.
struct SwitchingTotals {
  std::vector<BigCount> forward;
  std::vector<BigCount> reverse;
};

/// Needs m!·n! <= 1e6 (TooLarge otherwise).
SwitchingTotals switching_totals(const BipartiteGraph& d, const BipartiteGraph& h);

}  // namespace semifactor
