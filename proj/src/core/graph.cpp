#include "semifactor/graph.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "semifactor/error.hpp"

namespace semifactor {

namespace {
int words_for(int n) { return (n + 63) / 64; }
}

BipartiteGraph::BipartiteGraph(int m, int n) : m_(m), n_(n), words_(words_for(n)) {
  if (m < 0 || n < 0) throw Error(ErrorKind::InvalidArgument, "negative part size");
  bits_.assign(static_cast<std::size_t>(m) * words_, 0);
}

BipartiteGraph::BipartiteGraph(int m, int n, std::span<const Edge> edges) : BipartiteGraph(m, n) {
  for (auto [u, v] : edges) {
    if (u < 0 || u >= m || v < 0 || v >= n) {
      throw Error(ErrorKind::InvalidArgument, "edge (" + std::to_string(u) + ", " +
                                                  std::to_string(v) + ") out of range");
    }
    if (has_edge(u, v)) {
      throw Error(ErrorKind::InvalidArgument, "duplicate edge (" + std::to_string(u) + ", " +
                                                  std::to_string(v) + ")");
    }
    set(u, v);
  }
}

BipartiteGraph BipartiteGraph::complete(int m, int n) {
  BipartiteGraph g(m, n);
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < n; ++v) g.set(u, v);
  return g;
}

BipartiteGraph BipartiteGraph::matching(std::span<const int> perm) {
  std::vector<Edge> edges;
  for (int i = 0; i < static_cast<int>(perm.size()); ++i) edges.emplace_back(i, perm[i]);
  const int n = static_cast<int>(perm.size());
  return BipartiteGraph(n, n, edges);
}

BipartiteGraph BipartiteGraph::circulant(int n, std::span<const int> shifts) {
  std::vector<Edge> edges;
  for (int s : shifts)
    for (int i = 0; i < n; ++i) edges.emplace_back(i, ((i + s) % n + n) % n);
  return BipartiteGraph(n, n, edges);
}

void BipartiteGraph::set(int u, int v) {
  bits_[static_cast<std::size_t>(u) * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
}

bool BipartiteGraph::has_edge(int u, int v) const {
  return (bits_[static_cast<std::size_t>(u) * words_ + v / 64] >> (v % 64)) & 1U;
}

int BipartiteGraph::degree_v1(int u) const {
  int d = 0;
  for (auto w : row(u)) d += std::popcount(w);
  return d;
}

int BipartiteGraph::degree_v2(int v) const {
  int d = 0;
  for (int u = 0; u < m_; ++u) d += has_edge(u, v) ? 1 : 0;
  return d;
}

std::int64_t BipartiteGraph::edge_count() const {
  std::int64_t total = 0;
  for (auto w : bits_) total += std::popcount(w);
  return total;
}

std::vector<Edge> BipartiteGraph::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < m_; ++u)
    for (int v = 0; v < n_; ++v)
      if (has_edge(u, v)) out.emplace_back(u, v);
  return out;
}

int common_edge_count(const BipartiteGraph& a, const BipartiteGraph& b) {
  if (a.m() != b.m() || a.n() != b.n()) throw Error(ErrorKind::ShapeMismatch, "graphs differ in shape");
  int total = 0;
  for (int u = 0; u < a.m(); ++u) {
    auto ra = a.row(u);
    auto rb = b.row(u);
    for (std::size_t w = 0; w < ra.size(); ++w) total += std::popcount(ra[w] & rb[w]);
  }
  return total;
}

bool validate_semiregular(const BipartiteGraph& g, std::int64_t d1) {
  if (g.n() == 0) return d1 == 0;
  if ((d1 * g.m()) % g.n() != 0) return false;
  const std::int64_t d2 = d1 * g.m() / g.n();
  for (int u = 0; u < g.m(); ++u)
    if (g.degree_v1(u) != d1) return false;
  for (int v = 0; v < g.n(); ++v)
    if (g.degree_v2(v) != d2) return false;
  return true;
}

ColourMatrix::ColourMatrix(int m, int n, std::vector<int> colours)
    : m_(m), n_(n), colours_(std::move(colours)) {
  if (m < 0 || n < 0 || colours_.size() != static_cast<std::size_t>(m) * n) {
    throw Error(ErrorKind::ShapeMismatch, "colour array size does not match m*n");
  }
}

ColourMatrix::ColourMatrix(std::initializer_list<std::initializer_list<int>> rows)
    : m_(static_cast<int>(rows.size())), n_(rows.size() ? static_cast<int>(rows.begin()->size()) : 0) {
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n_) throw Error(ErrorKind::ShapeMismatch, "ragged colour matrix");
    colours_.insert(colours_.end(), r.begin(), r.end());
  }
}

BipartiteGraph ColourMatrix::factor(int colour) const {
  std::vector<Edge> edges;
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < n_; ++j)
      if (at(i, j) == colour) edges.emplace_back(i, j);
  return BipartiteGraph(m_, n_, edges);
}

bool validate_colouring(const ColourMatrix& c, const FactorisationSpec& spec) {
  if (c.m() != spec.m() || c.n() != spec.n()) {
    throw Error(ErrorKind::ShapeMismatch, "colour matrix shape differs from the spec");
  }
  const int colours = spec.k() + 1;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(colours));
  for (int i = 0; i < c.m(); ++i) {
    std::fill(counts.begin(), counts.end(), 0);
    for (int j = 0; j < c.n(); ++j) {
      const int col = c.at(i, j);
      if (col < 0 || col >= colours) throw Error(ErrorKind::ShapeMismatch, "colour out of range");
      ++counts[col];
    }
    if (counts != spec.row_degrees()) return false;
  }
  for (int j = 0; j < c.n(); ++j) {
    std::fill(counts.begin(), counts.end(), 0);
    for (int i = 0; i < c.m(); ++i) ++counts[c.at(i, j)];
    if (counts != spec.column_degrees()) return false;
  }
  return true;
}

}  // namespace semifactor
