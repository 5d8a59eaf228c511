#pragma once

// Vertex sequences that certify a directed path or cycle in a given graph.
// Length convention: a path's length counts edges, a cycle's counts vertices.

#include <string>
#include <vector>

#include "dicycle/digraph.hpp"

namespace dicycle {

struct PathWitness {
  std::vector<Vertex> vertices;

  std::size_t length() const noexcept { return vertices.empty() ? 0 : vertices.size() - 1; }

  friend bool operator==(const PathWitness&, const PathWitness&) = default;
};

struct CycleWitness {
  std::vector<Vertex> vertices;

  std::size_t length() const noexcept { return vertices.size(); }

  friend bool operator==(const CycleWitness&, const CycleWitness&) = default;
};

namespace detail {

inline bool distinct_in_range(const std::vector<Vertex>& seq, std::size_t n) {
  std::vector<char> seen(n, 0);
  for (Vertex v : seq) {
    if (v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

}  // namespace detail

// Empty string when valid, otherwise a description of the first defect.
inline std::string path_defect(const Digraph& g, const PathWitness& p) {
  if (!detail::distinct_in_range(p.vertices, g.order())) return "repeated or out-of-range vertex";
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
    if (!g.has_edge(p.vertices[i], p.vertices[i + 1])) {
      return "missing edge " + std::to_string(p.vertices[i]) + "->" +
             std::to_string(p.vertices[i + 1]);
    }
  }
  return {};
}

inline bool is_valid_path(const Digraph& g, const PathWitness& p) { return path_defect(g, p).empty(); }

// With `undirected` set, 2-cycles are rejected: a cycle of a symmetric graph
// read as an undirected graph needs at least three vertices.
inline std::string cycle_defect(const Digraph& g, const CycleWitness& c, bool undirected = false) {
  const auto& vs = c.vertices;
  if (vs.size() < (undirected ? 3u : 2u)) return "cycle too short";
  if (!detail::distinct_in_range(vs, g.order())) return "repeated or out-of-range vertex";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Vertex u = vs[i];
    const Vertex v = vs[(i + 1) % vs.size()];
    if (!g.has_edge(u, v)) return "missing edge " + std::to_string(u) + "->" + std::to_string(v);
  }
  return {};
}

inline bool is_valid_cycle(const Digraph& g, const CycleWitness& c, bool undirected = false) {
  return cycle_defect(g, c, undirected).empty();
}

}  // namespace dicycle
