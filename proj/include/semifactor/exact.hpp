#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "semifactor/bignum.hpp"
#include "semifactor/graph.hpp"
#include "semifactor/spec.hpp"

namespace semifactor {

/// Limits for the exact counters. Running out is an error, never an
/// approximation.
struct CountBudget {
  std::uint64_t max_states = 50'000'000;
  double max_seconds = 600.0;
};

struct CountResult {
  BigCount count;
  std::uint64_t states_explored = 0;
};

/// Canonical DP state for `count_factorisations`: V₁ rows grouped by their
/// remaining per-colour demand, together with the number of V₂ columns not
/// yet processed. Classes are kept sorted by residual vector so that equal
/// states compare and hash equal.
class ResidualState {
 public:
  /// One class per distinct residual; `residuals` is rows × colours.
  ResidualState(int colours, std::int64_t columns_remaining,
                std::span<const std::vector<std::int64_t>> residuals);

  static ResidualState initial(const FactorisationSpec& spec);

  int colours() const noexcept { return colours_; }
  std::int64_t columns_remaining() const noexcept { return columns_remaining_; }
  std::size_t class_count() const noexcept { return encoded_.size() / (colours_ + 1); }
  std::span<const std::uint16_t> residual(std::size_t cls) const {
    return {encoded_.data() + cls * (colours_ + 1), static_cast<std::size_t>(colours_)};
  }
  std::uint16_t multiplicity(std::size_t cls) const { return encoded_[cls * (colours_ + 1) + colours_]; }

  /// Multiplicities sum to m, and colour c's total residual is
  /// t_c × columns_remaining.
  bool consistent_with(const FactorisationSpec& spec) const;

  const std::vector<std::uint16_t>& encoded() const noexcept { return encoded_; }
  friend bool operator==(const ResidualState&, const ResidualState&) = default;

 private:
  friend class ResidualStateBuilder;
  ResidualState() = default;

  int colours_ = 0;
  std::int64_t columns_remaining_ = 0;
  std::vector<std::uint16_t> encoded_;  // [r_0 .. r_{colours-1}, multiplicity] per class
};

struct ResidualStateHash {
  std::size_t operator()(const ResidualState& s) const noexcept;
};

/// R(m, n; λ₀, …, λ_k): the number of ordered partitions of E(K_{m,n}) into
/// semiregular factors with the given degrees.
///
/// Columns of V₂ are processed one at a time. At each column the t_c slots of
/// colour c are handed to rows grouped by residual class, weighting each
/// split by a product of multinomials, and the next layer is memoised on the
/// canonical ResidualState. Layers are expanded on up to `threads` workers
/// (0 = hardware concurrency); the result does not depend on the count.
CountResult count_factorisations(const FactorisationSpec& spec, const CountBudget& budget = {},
                                 unsigned threads = 0);

/// Independent oracle: enumerates every m×n array whose rows carry the row
/// degrees and filters with validate_colouring. TooLarge when more than 1e8
/// arrays would be visited.
BigCount brute_force_count(const FactorisationSpec& spec);

/// Number of arrays `brute_force_count` would visit.
BigCount brute_force_work(const FactorisationSpec& spec);

/// F(n, k), the number of k×n Latin rectangles, through a DP whose row
/// residuals are subsets of the k matching colours.
CountResult count_latin_rectangles(int n, int k, const CountBudget& budget = {},
                                   unsigned threads = 0);

/// Number of (m, n, s_h/n)-semiregular graphs edge-disjoint from `d`.
CountResult count_disjoint_extensions(const BipartiteGraph& d, std::int64_t s_h,
                                      const CountBudget& budget = {});

/// Fraction of the m!·n! relabellings of `h` that are edge-disjoint from `d`,
/// by plain enumeration. TooLarge beyond m, n ≤ 7.
Rational exact_disjoint_probability(const BipartiteGraph& d, const BipartiteGraph& h,
                                    unsigned threads = 0);

/// R(m,n; 1-λ, λ₁..λ_k) / R(m,n; 1-λ, λ) with λ = Σ sub_degrees / n.
Rational average_split_count(std::int64_t m, std::int64_t n,
                             std::span<const std::int64_t> sub_degrees,
                             const CountBudget& budget = {});

/// Calls `visit` for every (m, n, d1/n)-semiregular graph; stops early when
/// `visit` returns false. Returns the number visited.
std::uint64_t for_each_semiregular(int m, int n, int d1,
                                   const std::function<bool(const BipartiteGraph&)>& visit);

}  // namespace semifactor
