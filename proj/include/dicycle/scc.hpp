#pragma once

#include <algorithm>
#include <vector>

#include "dicycle/digraph.hpp"

namespace dicycle {

struct SccDecomposition {
  std::vector<std::size_t> component_of;      // vertex -> index into components
  std::vector<std::vector<Vertex>> components;  // each ascending; ordered by smallest member

  std::size_t largest() const {
    std::size_t best = 0;
    for (const auto& c : components) best = std::max(best, c.size());
    return best;
  }
};

// Iterative Tarjan.
inline SccDecomposition scc_decomposition(const Digraph& g) {
  const std::size_t n = g.order();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), next_edge(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<Vertex> stack, call;
  std::vector<std::vector<Vertex>> comps;
  std::size_t counter = 0;

  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back(root);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      const Vertex v = call.back();
      auto out = g.out_neighbors(v);
      if (next_edge[v] < out.size()) {
        const Vertex w = out[next_edge[v]++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.push_back(w);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      call.pop_back();
      if (!call.empty()) low[call.back()] = std::min(low[call.back()], low[v]);
      if (low[v] == index[v]) {
        std::vector<Vertex> comp;
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
      }
    }
  }

  std::sort(comps.begin(), comps.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  SccDecomposition out;
  out.component_of.assign(n, 0);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (Vertex v : comps[c]) out.component_of[v] = c;
  }
  out.components = std::move(comps);
  return out;
}

inline bool is_acyclic(const Digraph& g) { return scc_decomposition(g).largest() <= 1; }

}  // namespace dicycle
