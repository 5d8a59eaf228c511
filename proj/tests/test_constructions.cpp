#include <gtest/gtest.h>

#include "dicycle/constructions.hpp"
#include "dicycle/scc.hpp"
#include "oracles.hpp"

using namespace dicycle;

TEST(Permutation, RejectsNonBijections) {
  EXPECT_THROW(Permutation({0, 0, 1}), InvalidParameter);
  EXPECT_THROW(Permutation({0, 3, 1}), InvalidParameter);
  EXPECT_NO_THROW(Permutation({2, 0, 1}));
  EXPECT_EQ(Permutation::random(30, 5).image().size(), 30u);
  const auto a = Permutation::random(30, 5), b = Permutation::random(30, 5);
  EXPECT_TRUE(std::equal(a.image().begin(), a.image().end(), b.image().begin()));
}

TEST(AcyclicSplit, TwoCycle) {
  const auto s = acyclic_split(Digraph(2, {{0, 1}, {1, 0}}), Permutation::identity(2));
  EXPECT_EQ(s.descending, Digraph(2, {{1, 0}}));
  EXPECT_EQ(s.ascending, Digraph(2, {{0, 1}}));
}

TEST(AcyclicSplit, ForwardDagGoesToOneHalf) {
  const Digraph g(5, {{0, 1}, {0, 4}, {1, 3}, {2, 3}, {3, 4}});
  const auto s = acyclic_split(g, Permutation::identity(5));
  EXPECT_EQ(s.descending.edge_count(), 0u);
  EXPECT_EQ(s.ascending, g);
  EXPECT_EQ(s.larger(), g);
}

TEST(AcyclicSplit, HalvesAreAcyclicAndPartitionTheEdges) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 10 + seed % 51;
    const auto g = generate_random(n, 0.3, seed);
    const auto s = acyclic_split(g, Permutation::random(n, seed + 1000));
    ASSERT_TRUE(oracle::has_topological_order(s.descending)) << seed;
    ASSERT_TRUE(oracle::has_topological_order(s.ascending)) << seed;
    EXPECT_EQ(scc_decomposition(s.descending).components.size(), n);
    std::vector<Edge> all(s.descending.edges().begin(), s.descending.edges().end());
    all.insert(all.end(), s.ascending.edges().begin(), s.ascending.edges().end());
    EXPECT_EQ(Digraph(n, all), g);
    EXPECT_GE(2 * s.larger().edge_count(), g.edge_count());
  }
  EXPECT_THROW(acyclic_split(Digraph(3), Permutation::identity(4)), InvalidParameter);
}

TEST(Layered, AlphaZeroKeepsEverything) {
  const auto g = generate_random(20, 0.3, 1);
  const auto l = layered_subgraph(g, 0.0);
  EXPECT_EQ(l.subgraph, g);
  EXPECT_EQ(l.partition.classes.size(), 1u);
}

TEST(Layered, CompleteDigraphOnFour) {
  const auto l = layered_subgraph(Digraph::complete(4), 0.5);
  ASSERT_EQ(l.partition.classes.size(), 2u);
  EXPECT_EQ(l.partition.classes[0], VertexSet({0, 1}));
  EXPECT_EQ(l.partition.classes[1], VertexSet({2, 3}));
  EXPECT_EQ(l.subgraph.edge_count(), 8u);
}

TEST(Layered, PartitionShape) {
  for (std::size_t n : {7u, 10u, 14u, 31u, 400u}) {
    for (double alpha : {0.1, 0.3, 0.4, 0.5, 0.6, 2.0 / 3.0, 0.7, 0.8}) {
      if (std::floor((1 - alpha) * static_cast<double>(n) + 1e-12) < 1) continue;
      const auto part = layered_partition(n, alpha);
      const auto size = static_cast<std::size_t>(std::floor((1 - alpha) * static_cast<double>(n) + 1e-12));
      std::vector<int> hits(n, 0);
      for (std::size_t c = 0; c < part.classes.size(); ++c) {
        for (Vertex v : part.classes[c]) {
          ++hits[v];
          EXPECT_EQ(part.class_of[v], c);
        }
        if (c + 1 < part.classes.size()) EXPECT_EQ(part.classes[c].size(), size) << n << " " << alpha;
        else EXPECT_LE(part.classes[c].size(), size) << n << " " << alpha;
      }
      for (int h : hits) ASSERT_EQ(h, 1);
      EXPECT_EQ(part.max_class_size(), size);
      EXPECT_GE(part.classes.size(), class_count(alpha));
    }
  }
  EXPECT_THROW(layered_partition(10, 1.0), DomainError);
  EXPECT_THROW(layered_partition(3, 0.9), DomainError);
}

TEST(Layered, KeptEdgesNeverGoBackward) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = generate_random(40, 0.2, seed);
    LayeredOptions opt;
    if (seed % 2) opt.shuffle_seed = seed;
    const auto l = layered_subgraph(g, 0.3 + 0.02 * static_cast<double>(seed), opt);
    const auto& cls = l.partition.class_of;
    for (const auto& e : g.edges()) {
      const bool kept = l.subgraph.has_edge(e.from, e.to);
      ASSERT_EQ(kept, cls[e.from] <= cls[e.to]);
    }
    EXPECT_LE(scc_decomposition(l.subgraph).largest(), l.partition.max_class_size());
    for (const auto& comp : scc_decomposition(l.subgraph).components) {
      for (Vertex v : comp) ASSERT_EQ(cls[v], cls[comp.front()]);
    }
  }
}

TEST(Layered, ShuffleChangesAssignmentOnly) {
  LayeredOptions opt;
  opt.shuffle_seed = 11;
  const auto a = layered_partition(50, 0.4, opt), b = layered_partition(50, 0.4, opt);
  EXPECT_EQ(a.class_of, b.class_of);
  EXPECT_NE(a.class_of, layered_partition(50, 0.4).class_of);
  EXPECT_EQ(a.max_class_size(), layered_partition(50, 0.4).max_class_size());
}

TEST(Layered, KeptFractionOnRandomGraphs) {
  double sum = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = generate_random(400, 0.05, seed);
    const auto l = layered_subgraph(g, 0.5);
    const double kept = static_cast<double>(l.subgraph.edge_count()) / static_cast<double>(g.edge_count());
    EXPECT_NEAR(kept, 0.75, 0.02) << seed;
    EXPECT_LE(scc_decomposition(l.subgraph).largest(), 200u);
    sum += kept;
  }
  EXPECT_NEAR(sum / 10, layered_kept_fraction(0.5), 0.02);
}

TEST(Woodall, Examples) {
  const auto g = woodall_extremal(6, 4);
  EXPECT_TRUE(g.is_symmetric());
  EXPECT_EQ(g.edge_count() / 2, 7u);
  EXPECT_EQ(oracle::longest_cycle_by_permutations(g, true), 3u);

  const auto star = woodall_extremal(5, 3);
  EXPECT_EQ(star.edge_count() / 2, 4u);
  EXPECT_EQ(oracle::longest_cycle_by_permutations(star, true), 0u);

  const auto seven = woodall_extremal(7, 7);
  EXPECT_EQ(seven.edge_count() / 2, 16u);
  EXPECT_EQ(oracle::longest_cycle_by_permutations(seven, true), 6u);
}

TEST(Woodall, EdgeCountIsOneBelowBound) {
  for (std::size_t n = 3; n <= 12; ++n)
    for (std::size_t ell = 3; ell <= n; ++ell) EXPECT_EQ(woodall_extremal(n, ell).edge_count() / 2 + 1, woodall_bound(n, ell));
}

TEST(RandomDelete, Cardinality) {
  const auto g = generate_random(30, 0.3, 2);
  EXPECT_EQ(random_delete(g, 1.0, 1), g);
  EXPECT_EQ(random_delete(g, 0.0, 1).edge_count(), 0u);
  std::vector<Edge> hundred;
  for (Vertex v = 0; v < 100; ++v) hundred.push_back({v, (v + 1) % 101});
  const Digraph h(101, hundred);
  const auto half = random_delete(h, 0.5, 3);
  EXPECT_EQ(half.edge_count(), 50u);
  for (const auto& e : half.edges()) EXPECT_TRUE(h.has_edge(e.from, e.to));
  EXPECT_EQ(random_delete(h, 0.5, 3), half);
  EXPECT_NE(random_delete(h, 0.5, 4), half);
  EXPECT_THROW(random_delete(h, 1.5, 0), InvalidParameter);
}
