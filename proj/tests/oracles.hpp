#pragma once

// Slow, obviously-correct reference implementations for the tests. None of
// these share code with the library beyond Digraph storage.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "dicycle/digraph.hpp"
#include "dicycle/finders.hpp"

namespace oracle {

using dicycle::Digraph;
using dicycle::Vertex;

inline std::vector<std::vector<bool>> adjacency_matrix(const Digraph& g) {
  std::vector<std::vector<bool>> a(g.order(), std::vector<bool>(g.order(), false));
  for (const auto& e : g.edges()) a[e.from][e.to] = true;
  return a;
}

// Transitive closure by Floyd-Warshall; reach[u][u] is always true.
inline std::vector<std::vector<bool>> reachability(const Digraph& g) {
  auto r = adjacency_matrix(g);
  const std::size_t n = g.order();
  for (std::size_t v = 0; v < n; ++v) r[v][v] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = true;
  return r;
}

// Component label per vertex: the smallest vertex mutually reachable with it.
inline std::vector<Vertex> scc_labels(const Digraph& g) {
  const auto r = reachability(g);
  std::vector<Vertex> label(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    for (Vertex u = 0; u <= v; ++u) {
      if (r[u][v] && r[v][u]) {
        label[v] = u;
        break;
      }
    }
  }
  return label;
}

// Kahn's algorithm.
inline bool has_topological_order(const Digraph& g) {
  std::vector<std::size_t> indeg(g.order(), 0);
  for (const auto& e : g.edges()) ++indeg[e.to];
  std::vector<Vertex> ready;
  for (Vertex v = 0; v < g.order(); ++v)
    if (indeg[v] == 0) ready.push_back(v);
  std::size_t seen = 0;
  while (!ready.empty()) {
    Vertex v = ready.back();
    ready.pop_back();
    ++seen;
    for (const auto& e : g.edges())
      if (e.from == v && --indeg[e.to] == 0) ready.push_back(e.to);
  }
  return seen == g.order();
}

// Longest directed cycle by trying every ordered vertex sequence that starts
// at its minimum: each subset, each permutation of the rest.
inline std::size_t longest_cycle_by_permutations(const Digraph& g, bool undirected = false) {
  const auto a = adjacency_matrix(g);
  const std::size_t n = g.order();
  const std::size_t min_len = undirected ? 3 : 2;
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<Vertex> members;
    for (Vertex v = 0; v < n; ++v)
      if ((mask >> v) & 1u) members.push_back(v);
    if (members.size() < min_len || members.size() <= best) continue;
    std::vector<Vertex> rest(members.begin() + 1, members.end());
    do {
      bool ok = a[members[0]][rest.front()] && a[rest.back()][members[0]];
      for (std::size_t i = 0; ok && i + 1 < rest.size(); ++i) ok = a[rest[i]][rest[i + 1]];
      if (ok) {
        best = members.size();
        break;
      }
    } while (std::next_permutation(rest.begin(), rest.end()));
  }
  return best;
}

// Longest directed path (edge count) by exhaustive extension.
inline std::size_t longest_path(const Digraph& g) {
  const auto a = adjacency_matrix(g);
  const std::size_t n = g.order();
  std::size_t best = 0;
  std::vector<bool> used(n, false);
  auto extend = [&](auto&& self, Vertex v, std::size_t len) -> void {
    best = std::max(best, len);
    for (Vertex w = 0; w < n; ++w) {
      if (!used[w] && a[v][w]) {
        used[w] = true;
        self(self, w, len + 1);
        used[w] = false;
      }
    }
  };
  for (Vertex v = 0; v < n; ++v) {
    used[v] = true;
    extend(extend, v, 0);
    used[v] = false;
  }
  return best;
}

inline std::vector<std::vector<Vertex>> subsets_of(const std::vector<Vertex>& base) {
  std::vector<std::vector<Vertex>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << base.size()); ++mask) {
    std::vector<Vertex> s;
    for (std::size_t i = 0; i < base.size(); ++i)
      if ((mask >> i) & 1u) s.push_back(base[i]);
    out.push_back(std::move(s));
  }
  return out;
}

inline std::size_t count_edges(const Digraph& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::size_t c = 0;
  for (Vertex x : a)
    for (Vertex y : b)
      if (g.has_edge(x, y)) ++c;
  return c;
}

// max |e(A,B) - p|A|^2| / (|A| sqrt(pn)) over disjoint equal-size pairs, by
// assigning each vertex to A, B or neither.
inline double witnessed_r(const Digraph& g, double p) {
  const std::size_t n = g.order();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  double best = 0.0;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<Vertex> a, b;
    std::size_t c = code;
    for (Vertex v = 0; v < n; ++v, c /= 3) {
      if (c % 3 == 1) a.push_back(v);
      if (c % 3 == 2) b.push_back(v);
    }
    if (a.empty() || a.size() != b.size()) continue;
    const double size = static_cast<double>(a.size());
    const double dev = std::abs(static_cast<double>(count_edges(g, a, b)) - p * size * size) /
                       (size * std::sqrt(p * static_cast<double>(n)));
    best = std::max(best, dev);
  }
  return best;
}

// Regularity by listing every subset of each side.
inline bool is_regular(const Digraph& g, const std::vector<Vertex>& u, const std::vector<Vertex>& w, double delta,
                       double p) {
  auto d = [&](const std::vector<Vertex>& x, const std::vector<Vertex>& y) {
    return static_cast<double>(count_edges(g, x, y)) / (p * static_cast<double>(x.size() * y.size()));
  };
  const double duw = d(u, w), dwu = d(w, u);
  for (const auto& su : subsets_of(u)) {
    if (su.empty() || static_cast<double>(su.size()) < delta * static_cast<double>(u.size()) - 1e-9) continue;
    for (const auto& sw : subsets_of(w)) {
      if (sw.empty() || static_cast<double>(sw.size()) < delta * static_cast<double>(w.size()) - 1e-9) continue;
      if (std::abs(duw - d(su, sw)) >= delta || std::abs(dwu - d(sw, su)) >= delta) return false;
    }
  }
  return true;
}

// Smallest k such that every k-subset pair across the sides has an edge each
// way; t + 1 if none.
inline std::size_t expansion_k(const Digraph& g, const std::vector<Vertex>& v1, const std::vector<Vertex>& v2) {
  const auto s1 = subsets_of(v1), s2 = subsets_of(v2);
  for (std::size_t k = 1; k <= v1.size(); ++k) {
    bool ok = true;
    for (const auto& a : s1) {
      if (a.size() != k) continue;
      for (const auto& b : s2) {
        if (b.size() != k) continue;
        if (count_edges(g, a, b) == 0 || count_edges(g, b, a) == 0) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) return k;
  }
  return v1.size() + 1;
}

// Replays a DFS event log from scratch and reports the first broken rule:
// only T->U and U->S moves, pushes extend the stack path by an edge, pops take
// the top, S/T/U partition the universe, and no edge runs from S to T. With
// `sides`, also checks the balanced stack splits evenly across them.
inline std::string replay_trace(const Digraph& g, const dicycle::DfsTrace& trace,
                                const std::vector<int>* sides = nullptr) {
  using dicycle::Place;
  std::vector<int> place(g.order(), -1);  // -1 outside, 0 T, 1 U, 2 S
  for (Vertex v : trace.universe) place[v] = 0;
  std::vector<Vertex> stack;
  std::size_t done = 0, unvisited = trace.universe.size();
  bool balanced_checked = false;
  for (std::size_t i = 0; i < trace.events.size(); ++i) {
    const auto& ev = trace.events[i];
    const std::string at = "event " + std::to_string(i) + ": ";
    if (ev.step != i + 1) return at + "step numbering";
    if (ev.from == Place::unvisited && ev.to == Place::stack) {
      if (place[ev.vertex] != 0) return at + "pushed a vertex not in T";
      if (!stack.empty() && !g.has_edge(stack.back(), ev.vertex)) return at + "stack is not a path";
      place[ev.vertex] = 1;
      stack.push_back(ev.vertex);
      --unvisited;
    } else if (ev.from == Place::stack && ev.to == Place::done) {
      if (stack.empty() || stack.back() != ev.vertex) return at + "popped a vertex that is not the top";
      place[ev.vertex] = 2;
      stack.pop_back();
      ++done;
    } else {
      return at + "illegal move";
    }
    std::size_t t = 0, u = 0, s = 0;
    for (Vertex v : trace.universe) {
      if (place[v] == 0) ++t;
      if (place[v] == 1) ++u;
      if (place[v] == 2) ++s;
    }
    if (t + u + s != trace.universe.size() || u != stack.size()) return at + "sets do not partition the universe";
    for (const auto& e : g.edges()) {
      if (place[e.from] == 2 && place[e.to] == 0) {
        if (!sides || (*sides)[e.from] != (*sides)[e.to]) return at + "edge from S to T";
      }
    }
    if (!balanced_checked && done == unvisited) {
      balanced_checked = true;
      if (!trace.balanced) return at + "balanced snapshot missing";
      if (trace.balanced->step != ev.step) return at + "balanced snapshot at the wrong step";
      if (trace.balanced->stack != stack) return at + "balanced snapshot stack differs";
      if (trace.balanced->done.size() != done || trace.balanced->unvisited.size() != unvisited) {
        return at + "balanced snapshot set sizes differ";
      }
      if (sides) {
        std::size_t first = 0;
        for (Vertex v : stack) first += (*sides)[v] == 0;
        if (2 * first != stack.size()) return at + "balanced stack is not split evenly";
      }
    }
  }
  if (done != trace.universe.size()) return "search ended before finishing every vertex";
  if (!balanced_checked && trace.balanced) return "snapshot recorded but sizes never balanced";
  return {};
}

}  // namespace oracle
