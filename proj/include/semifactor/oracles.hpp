#pragma once

#include "semifactor/bignum.hpp"
#include "semifactor/spec.hpp"

// Slow, deliberately naive reference computations. None of them shares code
// with the counting engines they are used to check.
namespace semifactor::oracles {

/// D_n through D_n = (n − 1)(D_{n−1} + D_{n−2}).
BigCount derangements(int n);

/// Number of ordered colourings of the n columns, each column an independent
/// uniform arrangement of t_c copies of colour c over the m rows, whose row
/// totals hit s exactly. Found by convolving one column at a time over the
/// full (m − 1) × k partial-sum vector.
BigCount lattice_hits(const FactorisationSpec& spec);

/// lattice_hits / multinomial(m; t)^n.
Rational lattice_hit_probability(const FactorisationSpec& spec);

/// k × n Latin rectangles by filling cells row by row with backtracking; the
/// first row is fixed and the result multiplied by n!.
BigCount latin_rectangles_by_rows(int n, int k);

/// Ordered tuples (p_2, ..., p_g) of permutations of n points such that the
/// identity and all p_i are pairwise disagreeing everywhere.
BigCount disjoint_permutation_tuples(int n, int g);

}  // namespace semifactor::oracles
