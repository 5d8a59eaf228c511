#pragma once

// Simple directed graphs on dense labels 0..n-1. Antiparallel edges are
// allowed; self-loops and parallel edges are not.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "dicycle/errors.hpp"
#include "dicycle/random.hpp"

namespace dicycle {

using Vertex = std::uint32_t;

struct Edge {
  Vertex from;
  Vertex to;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable once built. Edges are kept sorted (from, to); adjacency is CSR in
// both directions with ascending neighbor labels.
class Digraph {
 public:
  Digraph() = default;

  explicit Digraph(std::size_t n) : n_(n), out_offsets_(n + 1, 0), in_offsets_(n + 1, 0) {}

  Digraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const Edge& e = edges_[i];
      if (e.from >= n_ || e.to >= n_) {
        throw InvalidParameter("edge " + std::to_string(e.from) + "->" + std::to_string(e.to) +
                               " has an endpoint outside [0, " + std::to_string(n_) + ")");
      }
      if (e.from == e.to) {
        throw InvalidParameter("self-loop at vertex " + std::to_string(e.from));
      }
      if (i > 0 && edges_[i - 1] == e) {
        throw InvalidParameter("duplicate edge " + std::to_string(e.from) + "->" +
                               std::to_string(e.to));
      }
    }
    build_adjacency();
  }

  static Digraph complete(std::size_t n) {
    std::vector<Edge> edges;
    edges.reserve(n * (n > 0 ? n - 1 : 0));
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = 0; v < n; ++v) {
        if (u != v) edges.push_back({u, v});
      }
    }
    return Digraph(n, std::move(edges));
  }

  std::size_t order() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  std::span<const Vertex> out_neighbors(Vertex v) const {
    return {out_adj_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
  }
  std::span<const Vertex> in_neighbors(Vertex v) const {
    return {in_adj_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
  }

  bool has_edge(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_) return false;
    auto row = out_neighbors(u);
    return std::binary_search(row.begin(), row.end(), v);
  }

  // Out-neighborhood as a bitmask; requires n <= 64.
  std::uint64_t out_mask(Vertex v) const {
    std::uint64_t m = 0;
    for (Vertex u : out_neighbors(v)) m |= std::uint64_t{1} << u;
    return m;
  }

  bool is_symmetric() const {
    return std::all_of(edges_.begin(), edges_.end(),
                       [this](const Edge& e) { return has_edge(e.to, e.from); });
  }

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void build_adjacency() {
    out_offsets_.assign(n_ + 1, 0);
    in_offsets_.assign(n_ + 1, 0);
    for (const Edge& e : edges_) {
      ++out_offsets_[e.from + 1];
      ++in_offsets_[e.to + 1];
    }
    for (std::size_t v = 0; v < n_; ++v) {
      out_offsets_[v + 1] += out_offsets_[v];
      in_offsets_[v + 1] += in_offsets_[v];
    }
    out_adj_.resize(edges_.size());
    in_adj_.resize(edges_.size());
    std::vector<std::size_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
    // edges_ is sorted by (from, to), so out rows come out ascending; in rows
    // are filled in ascending `from` order for the same reason.
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      out_adj_[i] = edges_[i].to;
      in_adj_[in_fill[edges_[i].to]++] = edges_[i].from;
    }
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<Vertex> out_adj_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<Vertex> in_adj_;
};

// Sorted set of distinct vertex labels. Range against a particular graph is
// checked by the operations that take one.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> members) : VertexSet(std::vector<Vertex>(members)) {}
  explicit VertexSet(std::vector<Vertex> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    if (std::adjacent_find(members_.begin(), members_.end()) != members_.end()) {
      throw InvalidParameter("vertex set has repeated members");
    }
  }

  static VertexSet range(Vertex first, Vertex last) {
    std::vector<Vertex> m;
    for (Vertex v = first; v < last; ++v) m.push_back(v);
    return VertexSet(std::move(m));
  }

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  Vertex operator[](std::size_t i) const { return members_[i]; }
  std::span<const Vertex> members() const noexcept { return members_; }

  bool contains(Vertex v) const { return std::binary_search(members_.begin(), members_.end(), v); }

  bool disjoint_from(const VertexSet& other) const {
    auto a = members_.begin();
    auto b = other.members_.begin();
    while (a != members_.end() && b != other.members_.end()) {
      if (*a == *b) return false;
      if (*a < *b) ++a; else ++b;
    }
    return true;
  }

  void check_within(std::size_t n, const char* name) const {
    if (!members_.empty() && members_.back() >= n) {
      throw InvalidParameter(std::string(name) + " contains vertex " +
                             std::to_string(members_.back()) + " outside [0, " +
                             std::to_string(n) + ")");
    }
  }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> members_;
};

// D(n, p): for every unordered pair {x, y}, x < y, the edge x->y and then the
// edge y->x are drawn independently with probability p.
inline Digraph generate_random(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("edge probability must lie in [0, 1]");
  if (n < 1) throw InvalidParameter("vertex count must be positive");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      if (bernoulli(rng, p)) edges.push_back({x, y});
      if (bernoulli(rng, p)) edges.push_back({y, x});
    }
  }
  return Digraph(n, std::move(edges));
}

// Bipartite variant used for the long-path experiments: vertices 0..t-1 form
// one side and t..2t-1 the other; each cross ordered pair appears with
// probability p. No edges inside a side.
inline Digraph generate_random_bipartite(std::size_t t, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("edge probability must lie in [0, 1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex a = 0; a < t; ++a) {
    for (Vertex b = static_cast<Vertex>(t); b < 2 * t; ++b) {
      if (bernoulli(rng, p)) edges.push_back({a, b});
      if (bernoulli(rng, p)) edges.push_back({b, a});
    }
  }
  return Digraph(2 * t, std::move(edges));
}

// e_G(A, B): edges directed from A to B.
inline std::size_t edge_count_between(const Digraph& g, const VertexSet& a, const VertexSet& b) {
  a.check_within(g.order(), "A");
  b.check_within(g.order(), "B");
  if (!a.disjoint_from(b)) throw InvalidParameter("vertex sets must be disjoint");
  std::size_t count = 0;
  for (Vertex u : a) {
    auto row = g.out_neighbors(u);
    // Both ranges are sorted; merge-count the intersection.
    auto x = row.begin();
    auto y = b.begin();
    while (x != row.end() && y != b.end()) {
      if (*x == *y) {
        ++count;
        ++x;
        ++y;
      } else if (*x < *y) {
        ++x;
      } else {
        ++y;
      }
    }
  }
  return count;
}

// |E| / n^2
inline double density(const Digraph& g) {
  if (g.order() == 0) throw InvalidParameter("density of the null graph is undefined");
  const double n = static_cast<double>(g.order());
  return static_cast<double>(g.edge_count()) / (n * n);
}

}  // namespace dicycle
