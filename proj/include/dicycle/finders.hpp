#pragma once

// Path and cycle search.
//
//  * Stack DFS: vertices move unvisited (T) -> stack (U) -> done (S). The stack
//    is always a directed path and no edge ever runs from S to T, so whenever
//    |S| = |T| in an expanding bipartite graph the stack must be long.
//  * exact_longest_cycle: subset dynamic programming, one anchor at a time.
//  * paste_paths_to_cycle: joins vertex-disjoint paths end to start through
//    short windows at each junction.
//
// Lengths: a path's length is its edge count, a cycle's is its vertex count.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dicycle/digraph.hpp"
#include "dicycle/errors.hpp"
#include "dicycle/pseudorandomness.hpp"
#include "dicycle/random.hpp"
#include "dicycle/scc.hpp"
#include "dicycle/witness.hpp"

namespace dicycle {

enum class Place : std::uint8_t { unvisited, stack, done };

inline const char* to_string(Place p) {
  switch (p) {
    case Place::unvisited: return "T";
    case Place::stack: return "U";
    case Place::done: return "S";
  }
  return "?";
}

struct DfsEvent {
  std::size_t step = 0;
  Vertex vertex = 0;
  Place from = Place::unvisited;
  Place to = Place::stack;
};

struct DfsSnapshot {
  std::size_t step = 0;  // number of events applied
  std::vector<Vertex> done;       // S
  std::vector<Vertex> unvisited;  // T
  std::vector<Vertex> stack;      // U, bottom first
};

struct DfsTrace {
  std::vector<Vertex> universe;  // the vertices the search ran on
  std::vector<DfsEvent> events;
  // State at the first moment |S| = |T|.
  std::optional<DfsSnapshot> balanced;
};

namespace detail {

struct StackDfsResult {
  std::vector<Vertex> best_stack;
  // Longest cycle closed by an edge from the stack top back into the stack.
  std::vector<Vertex> best_cycle;
  std::optional<DfsTrace> trace;
};

// Runs the stack DFS over `order` (which also fixes priorities). adj[i] holds
// the positions in `order` of the out-neighbors of order[i], ascending.
inline StackDfsResult run_stack_dfs(const std::vector<Vertex>& order,
                                    const std::vector<std::vector<std::uint32_t>>& adj, bool record,
                                    bool want_cycles = false) {
  const std::size_t n = order.size();
  StackDfsResult res;
  if (record) res.trace.emplace().universe = order;
  std::vector<Place> place(n, Place::unvisited);
  std::vector<std::size_t> cursor(n, 0);
  std::vector<std::size_t> depth(n, 0);
  std::vector<std::uint32_t> stack;
  std::size_t done = 0, unvisited = n, step = 0, next_root = 0;

  auto log = [&](std::uint32_t i, Place from, Place to) {
    ++step;
    if (!record) return;
    res.trace->events.push_back({step, order[i], from, to});
    if (!res.trace->balanced && done == unvisited) {
      DfsSnapshot snap;
      snap.step = step;
      for (std::uint32_t j = 0; j < n; ++j) {
        if (place[j] == Place::done) snap.done.push_back(order[j]);
        if (place[j] == Place::unvisited) snap.unvisited.push_back(order[j]);
      }
      for (std::uint32_t j : stack) snap.stack.push_back(order[j]);
      res.trace->balanced = std::move(snap);
    }
  };
  auto push = [&](std::uint32_t i) {
    place[i] = Place::stack;
    --unvisited;
    depth[i] = stack.size();
    stack.push_back(i);
    log(i, Place::unvisited, Place::stack);
    if (stack.size() > res.best_stack.size()) {
      res.best_stack.clear();
      for (std::uint32_t j : stack) res.best_stack.push_back(order[j]);
    }
  };

  while (done < n) {
    if (stack.empty()) {
      while (place[next_root] != Place::unvisited) ++next_root;
      push(static_cast<std::uint32_t>(next_root));
      continue;
    }
    const std::uint32_t v = stack.back();
    const auto& out = adj[v];
    while (cursor[v] < out.size() && place[out[cursor[v]]] != Place::unvisited) ++cursor[v];
    if (cursor[v] < out.size()) {
      push(out[cursor[v]++]);
    } else {
      if (want_cycles) {
        for (std::uint32_t x : out) {
          if (place[x] != Place::stack) continue;
          const std::size_t len = depth[v] - depth[x] + 1;
          if (len >= 2 && len > res.best_cycle.size()) {
            res.best_cycle.clear();
            for (std::size_t d = depth[x]; d <= depth[v]; ++d) res.best_cycle.push_back(order[stack[d]]);
          }
        }
      }
      stack.pop_back();
      place[v] = Place::done;
      ++done;
      log(v, Place::stack, Place::done);
    }
  }
  return res;
}

// Adjacency over `order`, restricted by `keep(u, v)`, sorted by position.
template <typename Keep>
std::vector<std::vector<std::uint32_t>> positional_adjacency(const Digraph& g, const std::vector<Vertex>& order,
                                                             Keep&& keep) {
  constexpr auto kOutside = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> pos(g.order(), kOutside);
  for (std::uint32_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  std::vector<std::vector<std::uint32_t>> adj(order.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) {
    for (Vertex v : g.out_neighbors(order[i])) {
      if (pos[v] != kOutside && keep(order[i], v)) adj[i].push_back(pos[v]);
    }
    std::sort(adj[i].begin(), adj[i].end());
  }
  return adj;
}

}  // namespace detail

struct BipartiteDfsResult {
  PathWitness path;  // longest stack ever held
  DfsTrace trace;
};

// Stack DFS on the bipartite graph of edges between V1 and V2 (edges inside a
// side are ignored). `order` is the priority order over V1 u V2; ascending
// labels by default.
inline BipartiteDfsResult dfs_long_path_bipartite(const Digraph& g, const VertexSet& v1, const VertexSet& v2,
                                                  std::optional<std::vector<Vertex>> order = std::nullopt) {
  v1.check_within(g.order(), "V1");
  v2.check_within(g.order(), "V2");
  if (v1.size() != v2.size()) throw InvalidParameter("bipartition sides must have equal size");
  if (v1.empty()) throw InvalidParameter("bipartition sides must be non-empty");
  if (!v1.disjoint_from(v2)) throw InvalidParameter("bipartition sides must be disjoint");

  std::vector<signed char> side(g.order(), -1);
  for (Vertex v : v1) side[v] = 0;
  for (Vertex v : v2) side[v] = 1;
  std::vector<Vertex> ord;
  if (order) {
    ord = std::move(*order);
    std::vector<char> seen(g.order(), 0);
    for (Vertex v : ord) {
      if (v >= g.order() || side[v] < 0 || seen[v]) throw InvalidParameter("order must list V1 u V2 exactly once");
      seen[v] = 1;
    }
    if (ord.size() != 2 * v1.size()) throw InvalidParameter("order must list V1 u V2 exactly once");
  } else {
    std::merge(v1.begin(), v1.end(), v2.begin(), v2.end(), std::back_inserter(ord));
  }
  const auto adj = detail::positional_adjacency(g, ord, [&](Vertex a, Vertex b) { return side[a] != side[b]; });
  auto run = detail::run_stack_dfs(ord, adj, true);
  return {PathWitness{std::move(run.best_stack)}, std::move(*run.trace)};
}

// Longest stack path over `restarts` seeded random priority orders. Ties go to
// the lexicographically smallest vertex sequence.
inline PathWitness dfs_long_path(const Digraph& g, std::uint64_t seed, std::size_t restarts) {
  if (restarts < 1) throw InvalidParameter("restarts must be at least 1");
  if (g.order() == 0) return {};
  Rng rng(seed);
  PathWitness best;
  for (std::size_t r = 0; r < restarts; ++r) {
    auto perm = random_permutation(g.order(), rng);
    std::vector<Vertex> order(perm.begin(), perm.end());
    const auto adj = detail::positional_adjacency(g, order, [](Vertex, Vertex) { return true; });
    auto run = detail::run_stack_dfs(order, adj, false);
    if (run.best_stack.size() > best.vertices.size() ||
        (run.best_stack.size() == best.vertices.size() && run.best_stack < best.vertices)) {
      best.vertices = std::move(run.best_stack);
    }
  }
  return best;
}

// Cycle heuristic: over the same seeded orders as dfs_long_path, the longest
// cycle formed by a stack segment and an edge from its top back to its
// bottom. Ties go to the lexicographically smallest sequence.
inline std::optional<CycleWitness> dfs_long_cycle(const Digraph& g, std::uint64_t seed, std::size_t restarts) {
  if (restarts < 1) throw InvalidParameter("restarts must be at least 1");
  Rng rng(seed);
  std::vector<Vertex> best;
  for (std::size_t r = 0; r < restarts && g.order() > 0; ++r) {
    auto perm = random_permutation(g.order(), rng);
    std::vector<Vertex> order(perm.begin(), perm.end());
    const auto adj = detail::positional_adjacency(g, order, [](Vertex, Vertex) { return true; });
    auto run = detail::run_stack_dfs(order, adj, false, true);
    if (run.best_cycle.size() > best.size() || (run.best_cycle.size() == best.size() && run.best_cycle < best)) {
      best = std::move(run.best_cycle);
    }
  }
  if (best.empty()) return std::nullopt;
  return CycleWitness{std::move(best)};
}

inline constexpr std::size_t kDefaultCycleLimit = 20;

struct ExactCycleOptions {
  // Treat a symmetric graph as undirected: 2-cycles over antiparallel pairs do
  // not count, so the result is the undirected circumference.
  bool undirected = false;
  std::size_t limit = kDefaultCycleLimit;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct ExactCycleResult {
  std::size_t length = 0;  // 0 when acyclic
  std::optional<CycleWitness> witness;
};

// Bytes of DP table for the largest strongly connected component.
inline std::size_t exact_cycle_memory_estimate(const Digraph& g) {
  const std::size_t c = scc_decomposition(g).largest();
  return c <= 1 ? 0 : sizeof(std::uint32_t) * (std::size_t{1} << (c - 1));
}

// For each strongly connected component and each anchor a in it (ascending),
// dp[mask] is the set of vertices v such that some path starts at a, visits
// exactly `mask` (labels above a), and ends at v. Every cycle is found from its
// smallest vertex. Memory: 4 * 2^(c-1) bytes for a component of size c.
inline ExactCycleResult exact_longest_cycle(const Digraph& g, const ExactCycleOptions& opt = {}) {
  if (opt.limit > 28) throw InvalidParameter("exact cycle limit cannot exceed 28");
  if (g.order() > opt.limit) {
    throw SizeLimitError("graph of order " + std::to_string(g.order()) + " exceeds the exact cycle limit " +
                         std::to_string(opt.limit));
  }
  if (opt.undirected && !g.is_symmetric()) throw InvalidParameter("undirected mode needs a symmetric graph");
  const std::size_t min_len = opt.undirected ? 3 : 2;

  ExactCycleResult res;
  std::vector<Vertex> best_cycle;
  const auto scc = scc_decomposition(g);
  std::vector<std::uint32_t> dp;
  std::size_t ticks = 0;

  for (const auto& comp : scc.components) {
    if (comp.size() < min_len || comp.size() <= res.length) continue;
    for (std::size_t ai = 0; ai < comp.size(); ++ai) {
      const Vertex anchor = comp[ai];
      const std::size_t m = comp.size() - ai - 1;  // members above the anchor
      if (m + 1 <= res.length || m + 1 < min_len) break;
      std::vector<Vertex> local(comp.begin() + static_cast<std::ptrdiff_t>(ai) + 1, comp.end());
      std::vector<std::uint32_t> out(m, 0);
      std::uint32_t starts = 0, closes = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (g.has_edge(anchor, local[i])) starts |= 1u << i;
        if (g.has_edge(local[i], anchor)) closes |= 1u << i;
        for (std::size_t j = 0; j < m; ++j) {
          if (i != j && g.has_edge(local[i], local[j])) out[i] |= 1u << j;
        }
      }
      const std::uint32_t states = 1u << m;
      dp.assign(states, 0);
      for (std::size_t i = 0; i < m; ++i) {
        if ((starts >> i) & 1u) dp[1u << i] = 1u << i;
      }
      std::size_t local_best = 0;
      std::uint32_t best_mask = 0, best_end = 0;
      for (std::uint32_t mask = 1; mask < states; ++mask) {
        if (opt.deadline && (++ticks & 0xffff) == 0 && std::chrono::steady_clock::now() > *opt.deadline) {
          throw Timeout("exact longest-cycle search exceeded its deadline");
        }
        const std::uint32_t ends = dp[mask];
        if (!ends) continue;
        const std::size_t len = static_cast<std::size_t>(std::popcount(mask)) + 1;
        if ((ends & closes) && len >= min_len && len > std::max(local_best, res.length)) {
          local_best = len;
          best_mask = mask;
          best_end = static_cast<std::uint32_t>(std::countr_zero(ends & closes));
        }
        std::uint32_t reach = 0;
        for (std::uint32_t e = ends; e; e &= e - 1) reach |= out[std::countr_zero(e)];
        for (std::uint32_t ext = reach & ~mask; ext; ext &= ext - 1) {
          const std::uint32_t bit = ext & (~ext + 1);
          dp[mask | bit] |= bit;
        }
      }
      if (local_best > res.length) {
        // Walk back through the table to recover the path.
        std::vector<Vertex> seq{local[best_end]};
        std::uint32_t mask = best_mask;
        std::uint32_t v = best_end;
        while (std::popcount(mask) > 1) {
          const std::uint32_t prev = mask & ~(1u << v);
          std::uint32_t cand = dp[prev];
          while (cand && !((out[std::countr_zero(cand)] >> v) & 1u)) cand &= cand - 1;
          v = static_cast<std::uint32_t>(std::countr_zero(cand));
          seq.push_back(local[v]);
          mask = prev;
        }
        seq.push_back(anchor);
        std::reverse(seq.begin(), seq.end());
        res.length = local_best;
        best_cycle = std::move(seq);
      }
      if (res.length == comp.size()) break;
    }
  }
  if (res.length > 0) res.witness = CycleWitness{std::move(best_cycle)};
  return res;
}

// Largest strongly connected component: no directed cycle is longer.
inline std::size_t scc_cycle_upper_bound(const Digraph& g) { return scc_decomposition(g).largest(); }

struct PasteFailure {
  std::size_t junction = 0;  // junction q joins path q to path q+1 (cyclically)
  std::string reason;
};

struct PasteResult {
  std::optional<CycleWitness> cycle;
  std::optional<PasteFailure> failure;

  explicit operator bool() const noexcept { return cycle.has_value(); }
};

// Joins paths[0], paths[1], ... back to paths[0] into one cycle. At junction
// q an edge must leave one of the last `window` vertices of path q and enter
// one of the first `window` vertices of path q+1; the vertices after and
// before the chosen endpoints are dropped. With a connector set, the closing
// junction instead goes through a single connector vertex.
inline PasteResult paste_paths_to_cycle(const Digraph& g, const std::vector<PathWitness>& paths, std::size_t window,
                                        const std::optional<VertexSet>& connector = std::nullopt) {
  if (window < 1) throw InvalidParameter("window must be at least 1");
  if (paths.empty()) throw InvalidParameter("need at least one path");
  std::vector<char> used(g.order(), 0);
  for (const auto& p : paths) {
    if (p.vertices.empty()) throw InvalidParameter("paths must be non-empty");
    if (auto defect = path_defect(g, p); !defect.empty()) throw InvalidParameter("invalid path: " + defect);
    for (Vertex v : p.vertices) {
      if (used[v]) throw InvalidParameter("paths must be vertex-disjoint");
      used[v] = 1;
    }
  }
  if (connector) connector->check_within(g.order(), "connector");

  const std::size_t b = paths.size();
  std::vector<std::size_t> head(b, 0), tail(b);
  for (std::size_t q = 0; q < b; ++q) tail[q] = paths[q].vertices.size() - 1;
  std::optional<Vertex> via;

  for (std::size_t q = 0; q < b; ++q) {
    const std::size_t r = (q + 1) % b;
    const auto& src = paths[q].vertices;
    const auto& dst = paths[r].vertices;
    const bool closing = q + 1 == b;
    // Source index must keep path q non-empty; target index must not pass the
    // already fixed tail of path r (only path 0 has one by now).
    const std::size_t i_lo = std::max(src.size() - std::min(window, src.size()), head[q]);
    std::size_t j_hi = std::min(window, dst.size()) - 1;
    if (closing) j_hi = std::min(j_hi, tail[r]);

    std::optional<std::size_t> best_loss;
    std::size_t best_i = 0, best_j = 0;
    Vertex best_c = 0;
    auto offer = [&](std::size_t i, std::size_t j, Vertex c) {
      // A lone path closes on itself and must keep two vertices (one plus the connector).
      if (b == 1 && (connector ? j > i : j >= i)) return;
      const std::size_t loss = (src.size() - 1 - i) + j;
      if (!best_loss || loss < *best_loss) {
        best_loss = loss;
        best_i = i;
        best_j = j;
        best_c = c;
      }
    };

    if (closing && connector) {
      for (Vertex c : *connector) {
        if (used[c]) continue;
        for (std::size_t i = src.size(); i-- > i_lo;) {
          if (!g.has_edge(src[i], c)) continue;
          for (std::size_t j = 0; j <= j_hi; ++j) {
            if (g.has_edge(c, dst[j])) offer(i, j, c);
          }
        }
      }
    } else {
      for (std::size_t i = src.size(); i-- > i_lo;) {
        for (std::size_t j = 0; j <= j_hi; ++j) {
          if (g.has_edge(src[i], dst[j])) offer(i, j, 0);
        }
      }
    }
    if (!best_loss) {
      return {std::nullopt, PasteFailure{q, closing && connector ? "no connector vertex links the closing windows"
                                                                 : "no edge between the junction windows"}};
    }
    tail[q] = best_i;
    head[r] = best_j;
    if (closing && connector) via = best_c;
  }

  CycleWitness cycle;
  for (std::size_t q = 0; q < b; ++q) {
    const auto& vs = paths[q].vertices;
    cycle.vertices.insert(cycle.vertices.end(), vs.begin() + static_cast<std::ptrdiff_t>(head[q]),
                          vs.begin() + static_cast<std::ptrdiff_t>(tail[q]) + 1);
  }
  if (via) cycle.vertices.push_back(*via);
  if (auto defect = cycle_defect(g, cycle); !defect.empty()) {
    throw std::logic_error("pasted cycle failed validation: " + defect);
  }
  return {std::move(cycle), std::nullopt};
}

struct RegularPairPath {
  PathWitness path;  // starts in U whenever it is non-empty
  RegularityCheck regularity;
  // k = ceil(delta t): every k-subsets pair has an edge each way once the pair
  // is regular with bi-density >= 2 delta p.
  std::size_t expansion_bound = 0;
  // Exact regularity held, so the guaranteed length applies.
  bool certified = false;
  // 2t - 4k + 2 (or 0), i.e. (1 - 2 delta) 2t + 2 when delta t is integral.
  std::size_t guaranteed_length = 0;
};

inline RegularPairPath regular_pair_path(const Digraph& g, const VertexSet& u, const VertexSet& w, double delta,
                                         double p, const SearchOptions& opt = {}) {
  if (u.size() != w.size()) throw InvalidParameter("pair sides must have equal size");
  if (u.empty()) throw InvalidParameter("pair sides must be non-empty");
  if (!(p > 0.0)) throw InvalidParameter("p must be positive");
  if (!(delta > 0.0 && delta <= 1.0)) throw InvalidParameter("delta must lie in (0, 1]");
  const std::size_t t = u.size();
  const double floor_density = 2.0 * delta * p;
  const double area = static_cast<double>(t) * static_cast<double>(t);
  if (static_cast<double>(edge_count_between(g, u, w)) / area < floor_density - 1e-12) {
    throw PreconditionFailure("bi-density below 2*delta*p in direction U->W");
  }
  if (static_cast<double>(edge_count_between(g, w, u)) / area < floor_density - 1e-12) {
    throw PreconditionFailure("bi-density below 2*delta*p in direction W->U");
  }

  RegularPairPath res;
  res.regularity = regular_pair_check(g, u, w, delta, p, opt);
  res.expansion_bound =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(delta * static_cast<double>(t) - 1e-9)));
  res.certified = opt.mode == SearchMode::exact && res.regularity.regular;
  const auto bound = static_cast<std::int64_t>(2 * t) - 4 * static_cast<std::int64_t>(res.expansion_bound) + 2;
  res.guaranteed_length = bound > 0 ? static_cast<std::size_t>(bound) : 0;

  std::vector<Vertex> order(u.begin(), u.end());
  order.insert(order.end(), w.begin(), w.end());
  auto dfs = dfs_long_path_bipartite(g, u, w, std::move(order));
  res.path = std::move(dfs.path);
  if (!res.path.vertices.empty() && w.contains(res.path.vertices.front())) {
    res.path.vertices.erase(res.path.vertices.begin());
  }
  if (res.certified && res.path.length() < res.guaranteed_length) {
    throw std::logic_error("regular pair path shorter than its guaranteed length");
  }
  return res;
}

}  // namespace dicycle
