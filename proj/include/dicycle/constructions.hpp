#pragma once

// Adversarial subgraphs: the permutation split into two acyclic halves, the
// layered subgraph that confines every cycle to one vertex class, the
// extremal graph for the undirected long-cycle edge bound, and a uniform
// random-deletion baseline.

#include <cmath>
#include <optional>
#include <vector>

#include "dicycle/digraph.hpp"
#include "dicycle/errors.hpp"
#include "dicycle/random.hpp"
#include "dicycle/thresholds.hpp"

namespace dicycle {

class Permutation {
 public:
  explicit Permutation(std::vector<Vertex> image) : image_(std::move(image)) {
    std::vector<char> hit(image_.size(), 0);
    for (Vertex v : image_) {
      if (v >= image_.size() || hit[v]) throw InvalidParameter("sigma is not a bijection");
      hit[v] = 1;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<Vertex> image(n);
    for (Vertex v = 0; v < n; ++v) image[v] = v;
    return Permutation(std::move(image));
  }

  static Permutation random(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return Permutation(random_permutation(n, rng));
  }

  std::size_t size() const noexcept { return image_.size(); }
  Vertex operator()(Vertex v) const { return image_[v]; }
  std::span<const Vertex> image() const noexcept { return image_; }

 private:
  std::vector<Vertex> image_;
};

struct AcyclicSplit {
  Digraph descending;  // sigma(x) > sigma(y)
  Digraph ascending;   // sigma(x) < sigma(y)

  const Digraph& larger() const {
    return descending.edge_count() > ascending.edge_count() ? descending : ascending;
  }
};

inline AcyclicSplit acyclic_split(const Digraph& g, const Permutation& sigma) {
  if (sigma.size() != g.order()) throw InvalidParameter("sigma must permute the vertex set of G");
  std::vector<Edge> down, up;
  for (const Edge& e : g.edges()) {
    (sigma(e.from) > sigma(e.to) ? down : up).push_back(e);
  }
  return {Digraph(g.order(), std::move(down)), Digraph(g.order(), std::move(up))};
}

struct LayeredPartition {
  std::vector<VertexSet> classes;
  std::vector<std::size_t> class_of;  // vertex -> class index

  std::size_t max_class_size() const {
    std::size_t best = 0;
    for (const auto& c : classes) best = std::max(best, c.size());
    return best;
  }
};

struct LayeredOptions {
  // Slack for the two floors floor((1 - alpha) n) and floor(1 / (1 - alpha)).
  double tol = 1e-12;
  // Assign vertices to classes in a seeded random order instead of by label.
  std::optional<std::uint64_t> shuffle_seed;
};

struct LayeredSubgraph {
  Digraph subgraph;
  LayeredPartition partition;
};

// k = floor(1/(1-alpha)) classes of floor((1-alpha) n) vertices followed by one
// class with the rest. Keeps edges inside a class and edges from an earlier
// class to a later one; every backward edge is deleted, so each strongly
// connected component sits inside a single class.
//
// At small n the remainder can outgrow a full class; whole extra classes are
// then split off it so that the last class is never the largest.
inline LayeredPartition layered_partition(std::size_t n, double alpha, const LayeredOptions& opt = {}) {
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in [0, 1)");
  const double raw = (1.0 - alpha) * static_cast<double>(n);
  const auto class_size = static_cast<std::size_t>(std::floor(raw + opt.tol));
  if (class_size < 1) throw DomainError("class size floor((1 - alpha) n) must be at least 1");
  const std::size_t full = class_count(alpha, opt.tol);

  std::vector<Vertex> order(n);
  for (Vertex v = 0; v < n; ++v) order[v] = v;
  if (opt.shuffle_seed) {
    Rng rng(*opt.shuffle_seed);
    shuffle(order, rng);
  }

  std::vector<std::size_t> sizes(std::min(full, n / class_size), class_size);
  std::size_t rest = n - sizes.size() * class_size;
  while (rest > class_size) {
    sizes.push_back(class_size);
    rest -= class_size;
  }
  if (rest > 0) sizes.push_back(rest);

  LayeredPartition part;
  part.class_of.assign(n, 0);
  std::size_t next = 0;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    std::vector<Vertex> members(order.begin() + next, order.begin() + next + sizes[c]);
    for (Vertex v : members) part.class_of[v] = c;
    part.classes.emplace_back(std::move(members));
    next += sizes[c];
  }
  return part;
}

inline LayeredSubgraph layered_subgraph(const Digraph& g, double alpha, const LayeredOptions& opt = {}) {
  LayeredPartition part = layered_partition(g.order(), alpha, opt);
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (part.class_of[e.from] <= part.class_of[e.to]) kept.push_back(e);
  }
  return {Digraph(g.order(), std::move(kept)), std::move(part)};
}

// floor((n-1)/(ell-2)) disjoint cliques on ell-2 vertices, one clique on the
// remaining r = (n-1) mod (ell-2) vertices, and vertex n-1 joined to all
// others. Undirected, returned as a symmetric digraph. Its longest cycle has
// ell-1 vertices (none at all for ell = 3).
inline Digraph woodall_extremal(std::size_t n, std::size_t ell) {
  if (ell < 3 || ell > n) throw DomainError("cycle length must satisfy 3 <= ell <= n");
  const std::size_t block = ell - 2;
  std::vector<Edge> edges;
  auto join = [&](Vertex a, Vertex b) {
    edges.push_back({a, b});
    edges.push_back({b, a});
  };
  for (std::size_t start = 0; start < n - 1; start += block) {
    const std::size_t stop = std::min(start + block, n - 1);
    for (auto a = static_cast<Vertex>(start); a < stop; ++a) {
      for (Vertex b = a + 1; b < stop; ++b) join(a, b);
    }
  }
  const auto hub = static_cast<Vertex>(n - 1);
  for (Vertex v = 0; v < hub; ++v) join(v, hub);
  return Digraph(n, std::move(edges));
}

// Keeps exactly floor(keep_fraction |E|) edges chosen uniformly at random.
inline Digraph random_delete(const Digraph& g, double keep_fraction, std::uint64_t seed) {
  if (!(keep_fraction >= 0.0 && keep_fraction <= 1.0)) throw InvalidParameter("keep fraction must lie in [0, 1]");
  const auto keep = static_cast<std::size_t>(
      std::floor(keep_fraction * static_cast<double>(g.edge_count()) + 1e-9));
  std::vector<Edge> pool(g.edges().begin(), g.edges().end());
  Rng rng(seed);
  partial_shuffle(pool, keep, rng);
  pool.resize(std::min(keep, pool.size()));
  return Digraph(g.order(), std::move(pool));
}

}  // namespace dicycle
