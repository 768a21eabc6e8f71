#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "semifactor/spec.hpp"

namespace semifactor {

using Edge = std::pair<int, int>;

/// Bipartite graph on (V₁, V₂) with |V₁| = m, |V₂| = n, stored as one bitset
/// of V₂ neighbours per V₁ vertex. Immutable after construction.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  /// Edgeless graph.
  BipartiteGraph(int m, int n);
  /// Rejects out-of-range endpoints and duplicate edges (InvalidArgument).
  BipartiteGraph(int m, int n, std::span<const Edge> edges);

  static BipartiteGraph complete(int m, int n);
  /// Perfect matching {(i, perm[i])} on K_{n,n}.
  static BipartiteGraph matching(std::span<const int> perm);
  /// Union of the matchings i -> (i + shift) mod n, one per shift.
  static BipartiteGraph circulant(int n, std::span<const int> shifts);

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }
  int words_per_row() const noexcept { return words_; }

  bool has_edge(int u, int v) const;
  int degree_v1(int u) const;
  int degree_v2(int v) const;
  std::int64_t edge_count() const;
  std::vector<Edge> edges() const;

  std::span<const std::uint64_t> row(int u) const {
    return {bits_.data() + static_cast<std::size_t>(u) * words_, static_cast<std::size_t>(words_)};
  }

  friend bool operator==(const BipartiteGraph&, const BipartiteGraph&) = default;

 private:
  void set(int u, int v);

  int m_ = 0;
  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Number of edges present in both graphs. Throws ShapeMismatch.
int common_edge_count(const BipartiteGraph& a, const BipartiteGraph& b);

/// All V₁ degrees equal d1 and all V₂ degrees equal d1·m/n (false when that
/// is not an integer).
bool validate_semiregular(const BipartiteGraph& g, std::int64_t d1);

/// m×n array of colours; colour c marks an edge of factor c.
class ColourMatrix {
 public:
  ColourMatrix(int m, int n, std::vector<int> colours);
  ColourMatrix(std::initializer_list<std::initializer_list<int>> rows);

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }
  int at(int i, int j) const { return colours_[static_cast<std::size_t>(i) * n_ + j]; }

  /// The colour-c entries as a bipartite graph.
  BipartiteGraph factor(int colour) const;

 private:
  int m_;
  int n_;
  std::vector<int> colours_;
};

/// Every row holds s_c entries of colour c and every column t_c. Throws
/// ShapeMismatch when the matrix shape or colour range does not fit `spec`.
bool validate_colouring(const ColourMatrix& c, const FactorisationSpec& spec);

/// JSON graph files: {"m": int, "n": int, "edges": [[i, j], ...]}.
BipartiteGraph graph_from_json(const std::string& text);
std::string graph_to_json(const BipartiteGraph& g);
BipartiteGraph read_graph_file(const std::string& path);

}  // namespace semifactor
