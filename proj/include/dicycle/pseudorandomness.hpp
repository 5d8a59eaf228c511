#pragma once

// Witnesses for the edge-distribution properties of a digraph:
// (p, r)-pseudorandomness (jumbledness), (delta, D, p)-boundedness, directed
// p-density, (delta, p)-regular pairs, and the bipartite expansion parameter
// consumed by the DFS long-path bound.
//
// Every check has an exact mode (full enumeration, bounded by a size limit)
// and a sampled mode. Sampled results only ever refute: a sampled jumbledness
// value is a lower bound on the exact one, and "bounded"/"regular" from a
// sampled run means no violation was found.

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dicycle/digraph.hpp"
#include "dicycle/errors.hpp"
#include "dicycle/random.hpp"

namespace dicycle {

enum class SearchMode { exact, sampled };

inline const char* to_string(SearchMode m) { return m == SearchMode::exact ? "exact" : "sampled"; }

inline constexpr std::size_t kDefaultExactLimit = 12;

struct SearchOptions {
  SearchMode mode = SearchMode::exact;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::size_t exact_limit = kDefaultExactLimit;
};

struct SetPairWitness {
  VertexSet first;
  VertexSet second;
  double deviation = 0.0;
};

struct PseudorandomnessReport {
  double p = 0.0;
  double r_witnessed = 0.0;
  SearchMode mode = SearchMode::exact;
  std::size_t trials = 0;
  std::size_t pairs_examined = 0;
  std::optional<SetPairWitness> worst_pair;
  // p == 0 while some examined pair carried edges; deviation is then the raw count.
  bool degenerate_density = false;
};

namespace detail {

inline constexpr double kSizeGuard = 1e-9;

inline std::size_t ceil_fraction(double fraction, std::size_t whole) {
  const double x = fraction * static_cast<double>(whole);
  return static_cast<std::size_t>(std::ceil(x - kSizeGuard));
}

inline VertexSet set_from_mask(std::uint64_t mask, std::span<const Vertex> labels) {
  std::vector<Vertex> out;
  while (mask) {
    out.push_back(labels[static_cast<std::size_t>(std::countr_zero(mask))]);
    mask &= mask - 1;
  }
  return VertexSet(std::move(out));
}

inline VertexSet set_from_mask(std::uint64_t mask) {
  std::vector<Vertex> out;
  while (mask) {
    out.push_back(static_cast<Vertex>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return VertexSet(std::move(out));
}

// Next integer with the same popcount (Gosper's hack).
inline std::uint64_t next_combination(std::uint64_t x) {
  const std::uint64_t c = x & (~x + 1);
  const std::uint64_t r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

// Calls f(mask) for every k-subset of the set bits of `pool`.
template <typename F>
void for_each_subset_of_size(std::uint64_t pool, std::size_t k, F&& f) {
  std::vector<std::uint64_t> bits;
  for (std::uint64_t m = pool; m; m &= m - 1) bits.push_back(m & (~m + 1));
  const std::size_t n = bits.size();
  if (k > n) return;
  if (k == 0) {
    f(std::uint64_t{0});
    return;
  }
  const std::uint64_t stop = std::uint64_t{1} << n;
  for (std::uint64_t idx = (std::uint64_t{1} << k) - 1; idx < stop; idx = next_combination(idx)) {
    std::uint64_t mask = 0;
    for (std::uint64_t i = idx; i; i &= i - 1) mask |= bits[static_cast<std::size_t>(std::countr_zero(i))];
    f(mask);
  }
}

inline std::size_t popcount(std::uint64_t x) { return static_cast<std::size_t>(std::popcount(x)); }

inline void require_exact_size(std::size_t size, std::size_t limit, const char* what) {
  if (limit > 63) throw InvalidParameter("exact-enumeration limit cannot exceed 63");
  if (size > limit) {
    throw SizeLimitError(std::string(what) + " of size " + std::to_string(size) +
                         " exceeds the exact-enumeration limit " + std::to_string(limit));
  }
}

inline double jumbled_deviation(std::size_t edges, std::size_t a, double p, std::size_t n) {
  if (p == 0.0) return static_cast<double>(edges);
  const double ad = static_cast<double>(a);
  return std::abs(static_cast<double>(edges) - p * ad * ad) / (ad * std::sqrt(p * static_cast<double>(n)));
}

}  // namespace detail

struct JumbledOptions : SearchOptions {
  // Reference density; defaults to density(G).
  std::optional<double> p;
  // Sampled mode draws |A| = |B| uniformly from [1, n/2] unless fixed here.
  std::optional<std::size_t> pair_size;
};

// Largest examined value of |e(A, B) - p|A||B|| / (|A| sqrt(pn)) over disjoint
// A, B with |A| = |B|.
inline PseudorandomnessReport witnessed_r(const Digraph& g, const JumbledOptions& opt = {}) {
  const std::size_t n = g.order();
  PseudorandomnessReport rep;
  rep.p = opt.p ? *opt.p : density(g);
  if (rep.p < 0.0) throw InvalidParameter("reference density must be non-negative");
  rep.mode = opt.mode;

  auto consider = [&](std::size_t edges, std::size_t a, auto&& make_pair) {
    ++rep.pairs_examined;
    if (rep.p == 0.0 && edges > 0) rep.degenerate_density = true;
    const double dev = detail::jumbled_deviation(edges, a, rep.p, n);
    if (!rep.worst_pair || dev > rep.worst_pair->deviation) {
      auto [first, second] = make_pair();
      rep.worst_pair = SetPairWitness{std::move(first), std::move(second), dev};
      rep.r_witnessed = dev;
    }
  };

  if (opt.mode == SearchMode::exact) {
    detail::require_exact_size(n, opt.exact_limit, "graph");
    std::vector<std::uint64_t> out(n);
    for (Vertex v = 0; v < n; ++v) out[v] = g.out_mask(v);
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    for (std::size_t a = 1; 2 * a <= n; ++a) {
      detail::for_each_subset_of_size(all, a, [&](std::uint64_t amask) {
        detail::for_each_subset_of_size(all & ~amask, a, [&](std::uint64_t bmask) {
          std::size_t e = 0;
          for (std::uint64_t m = amask; m; m &= m - 1) e += detail::popcount(out[std::countr_zero(m)] & bmask);
          consider(e, a, [&] { return std::pair{detail::set_from_mask(amask), detail::set_from_mask(bmask)}; });
        });
      });
    }
    return rep;
  }

  if (opt.trials < 1) throw InvalidParameter("sampled mode needs at least one trial");
  rep.trials = opt.trials;
  if (n < 2) return rep;
  if (opt.pair_size && (*opt.pair_size < 1 || 2 * *opt.pair_size > n)) {
    throw InvalidParameter("pair size must lie in [1, n/2]");
  }
  Rng rng(opt.seed);
  std::vector<Vertex> pool(n);
  for (Vertex v = 0; v < n; ++v) pool[v] = v;
  std::vector<char> in_b(n, 0);
  for (std::size_t trial = 0; trial < opt.trials; ++trial) {
    const std::size_t a = opt.pair_size ? *opt.pair_size : 1 + uniform_below(rng, n / 2);
    partial_shuffle(pool, 2 * a, rng);
    for (std::size_t i = a; i < 2 * a; ++i) in_b[pool[i]] = 1;
    std::size_t e = 0;
    for (std::size_t i = 0; i < a; ++i) {
      for (Vertex v : g.out_neighbors(pool[i])) e += in_b[v];
    }
    consider(e, a, [&] {
      return std::pair{VertexSet(std::vector<Vertex>(pool.begin(), pool.begin() + a)),
                       VertexSet(std::vector<Vertex>(pool.begin() + a, pool.begin() + 2 * a))};
    });
    for (std::size_t i = a; i < 2 * a; ++i) in_b[pool[i]] = 0;
  }
  return rep;
}

struct BoundednessCheck {
  bool bounded = true;
  // Exact mode with no violation: the property is certified, not just unrefuted.
  bool certified = false;
  SearchMode mode = SearchMode::exact;
  std::size_t pairs_examined = 0;
  // Pair maximizing e(U, W) - D p |U||W| (positive means violated).
  std::optional<SetPairWitness> worst_pair;
};

// (delta, D, p)-boundedness: e(U, W) <= D p |U||W| for disjoint U, W with
// |U|, |W| >= delta n.
inline BoundednessCheck is_bounded(const Digraph& g, double delta, double bound_factor, double p,
                                   const SearchOptions& opt = {}) {
  if (!(delta > 0.0 && delta <= 1.0)) throw InvalidParameter("delta must lie in (0, 1]");
  if (!(bound_factor > 0.0)) throw InvalidParameter("bound factor D must be positive");
  if (!(p > 0.0 && p <= 1.0)) throw InvalidParameter("p must lie in (0, 1]");
  const std::size_t n = g.order();
  const std::size_t floor_size = std::max<std::size_t>(1, detail::ceil_fraction(delta, n));
  BoundednessCheck res;
  res.mode = opt.mode;

  auto consider = [&](std::size_t e, std::size_t u, std::size_t w, auto&& make_pair) {
    ++res.pairs_examined;
    const double excess = static_cast<double>(e) - bound_factor * p * static_cast<double>(u * w);
    if (!res.worst_pair || excess > res.worst_pair->deviation) {
      auto [first, second] = make_pair();
      res.worst_pair = SetPairWitness{std::move(first), std::move(second), excess};
    }
    if (excess > 1e-9) res.bounded = false;
  };

  if (opt.mode == SearchMode::exact) {
    detail::require_exact_size(n, opt.exact_limit, "graph");
    std::vector<std::uint64_t> out(n);
    for (Vertex v = 0; v < n; ++v) out[v] = g.out_mask(v);
    const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    for (std::uint64_t umask = 1; umask <= all && umask != 0; ++umask) {
      const std::size_t u = detail::popcount(umask);
      if (u < floor_size || u + floor_size > n) continue;
      const std::uint64_t rest = all & ~umask;
      for (std::uint64_t wmask = rest; wmask; wmask = (wmask - 1) & rest) {
        const std::size_t w = detail::popcount(wmask);
        if (w < floor_size) continue;
        std::size_t e = 0;
        for (std::uint64_t m = umask; m; m &= m - 1) e += detail::popcount(out[std::countr_zero(m)] & wmask);
        consider(e, u, w, [&] { return std::pair{detail::set_from_mask(umask), detail::set_from_mask(wmask)}; });
      }
      if (umask == all) break;
    }
    res.certified = res.bounded;
    return res;
  }

  if (opt.trials < 1) throw InvalidParameter("sampled mode needs at least one trial");
  if (2 * floor_size > n) return res;
  Rng rng(opt.seed);
  std::vector<Vertex> pool(n);
  for (Vertex v = 0; v < n; ++v) pool[v] = v;
  std::vector<char> in_w(n, 0);
  for (std::size_t trial = 0; trial < opt.trials; ++trial) {
    const std::size_t u = floor_size + uniform_below(rng, n - 2 * floor_size + 1);
    const std::size_t w = floor_size + uniform_below(rng, n - u - floor_size + 1);
    partial_shuffle(pool, u + w, rng);
    for (std::size_t i = u; i < u + w; ++i) in_w[pool[i]] = 1;
    std::size_t e = 0;
    for (std::size_t i = 0; i < u; ++i) {
      for (Vertex v : g.out_neighbors(pool[i])) e += in_w[v];
    }
    consider(e, u, w, [&] {
      return std::pair{VertexSet(std::vector<Vertex>(pool.begin(), pool.begin() + u)),
                       VertexSet(std::vector<Vertex>(pool.begin() + u, pool.begin() + u + w))};
    });
    for (std::size_t i = u; i < u + w; ++i) in_w[pool[i]] = 0;
  }
  return res;
}

// d_p(U, W) = e(U, W) / (p |U||W|)
inline double p_density(const Digraph& g, const VertexSet& u, const VertexSet& w, double p) {
  if (p == 0.0) throw UndefinedDensity("directed p-density is undefined for p = 0");
  if (!(p > 0.0)) throw InvalidParameter("p must be positive");
  if (u.empty() || w.empty()) throw InvalidParameter("p-density needs non-empty sets");
  const double e = static_cast<double>(edge_count_between(g, u, w));
  return e / (p * static_cast<double>(u.size()) * static_cast<double>(w.size()));
}

enum class Direction { forward, backward };  // U->W, W->U

inline const char* to_string(Direction d) { return d == Direction::forward ? "U->W" : "W->U"; }

struct SubpairWitness {
  VertexSet sub_u;
  VertexSet sub_w;
  Direction direction = Direction::forward;
  double deviation = 0.0;
};

struct RegularityCheck {
  double delta = 0.0;
  double p = 0.0;
  double density_uw = 0.0;  // d_p(U, W)
  double density_wu = 0.0;  // d_p(W, U)
  bool regular = true;
  // Edge density at least 2 delta p in both directions.
  bool bidensity_ok = false;
  SearchMode mode = SearchMode::exact;
  std::size_t subpairs_examined = 0;
  std::optional<SubpairWitness> worst_subpair;
};

// (delta, p)-regularity of (U, W): every U' of size >= delta|U| and W' of size
// >= delta|W| keeps both directed p-densities strictly within delta of the
// pair's.
inline RegularityCheck regular_pair_check(const Digraph& g, const VertexSet& u, const VertexSet& w,
                                          double delta, double p, const SearchOptions& opt = {}) {
  if (!(delta > 0.0 && delta <= 1.0)) throw InvalidParameter("delta must lie in (0, 1]");
  RegularityCheck res;
  res.delta = delta;
  res.p = p;
  res.mode = opt.mode;
  res.density_uw = p_density(g, u, w, p);
  res.density_wu = p_density(g, w, u, p);
  res.bidensity_ok = std::min(res.density_uw, res.density_wu) >= 2.0 * delta - 1e-12;
  const std::size_t a = u.size(), b = w.size();
  const std::size_t floor_u = std::max<std::size_t>(1, detail::ceil_fraction(delta, a));
  const std::size_t floor_w = std::max<std::size_t>(1, detail::ceil_fraction(delta, b));

  auto consider = [&](std::size_t fwd, std::size_t bwd, std::size_t su, std::size_t sw, auto&& make_sets) {
    ++res.subpairs_examined;
    const double scale = p * static_cast<double>(su) * static_cast<double>(sw);
    const double dev_f = std::abs(res.density_uw - static_cast<double>(fwd) / scale);
    const double dev_b = std::abs(res.density_wu - static_cast<double>(bwd) / scale);
    const bool back_worse = dev_b > dev_f;
    const double dev = back_worse ? dev_b : dev_f;
    if (dev >= delta) res.regular = false;
    if (!res.worst_subpair || dev > res.worst_subpair->deviation) {
      auto [su_set, sw_set] = make_sets();
      res.worst_subpair = SubpairWitness{std::move(su_set), std::move(sw_set),
                                         back_worse ? Direction::backward : Direction::forward, dev};
    }
  };

  if (opt.mode == SearchMode::exact) {
    detail::require_exact_size(std::max(a, b), opt.exact_limit, "pair side");
    // fwd[i]: W-local targets of U_i; bwd[i]: W-local sources of edges into U_i.
    std::vector<std::uint64_t> fwd(a, 0), bwd(a, 0);
    for (std::size_t i = 0; i < a; ++i) {
      for (std::size_t j = 0; j < b; ++j) {
        if (g.has_edge(u[i], w[j])) fwd[i] |= std::uint64_t{1} << j;
        if (g.has_edge(w[j], u[i])) bwd[i] |= std::uint64_t{1} << j;
      }
    }
    std::vector<std::size_t> cf(b), cb(b);
    const std::uint64_t ustop = std::uint64_t{1} << a;
    const std::uint64_t wstop = std::uint64_t{1} << b;
    for (std::uint64_t umask = 1; umask < ustop; ++umask) {
      const std::size_t su = detail::popcount(umask);
      if (su < floor_u) continue;
      for (std::size_t j = 0; j < b; ++j) {
        cf[j] = cb[j] = 0;
        for (std::uint64_t m = umask; m; m &= m - 1) {
          const auto i = static_cast<std::size_t>(std::countr_zero(m));
          cf[j] += (fwd[i] >> j) & 1u;
          cb[j] += (bwd[i] >> j) & 1u;
        }
      }
      // Walk W' in Gray-code order, updating the two edge counts incrementally.
      std::uint64_t wmask = 0;
      std::size_t sf = 0, sb = 0, sw = 0;
      for (std::uint64_t step = 1; step < wstop; ++step) {
        const auto j = static_cast<std::size_t>(std::countr_zero(step));
        wmask ^= std::uint64_t{1} << j;
        if ((wmask >> j) & 1u) {
          sf += cf[j];
          sb += cb[j];
          ++sw;
        } else {
          sf -= cf[j];
          sb -= cb[j];
          --sw;
        }
        if (sw < floor_w) continue;
        consider(sf, sb, su, sw, [&] {
          return std::pair{detail::set_from_mask(umask, u.members()), detail::set_from_mask(wmask, w.members())};
        });
      }
    }
    return res;
  }

  if (opt.trials < 1) throw InvalidParameter("sampled mode needs at least one trial");
  Rng rng(opt.seed);
  std::vector<Vertex> pu(u.begin(), u.end()), pw(w.begin(), w.end());
  for (std::size_t trial = 0; trial < opt.trials; ++trial) {
    const std::size_t su = floor_u + uniform_below(rng, a - floor_u + 1);
    const std::size_t sw = floor_w + uniform_below(rng, b - floor_w + 1);
    partial_shuffle(pu, su, rng);
    partial_shuffle(pw, sw, rng);
    VertexSet subu(std::vector<Vertex>(pu.begin(), pu.begin() + su));
    VertexSet subw(std::vector<Vertex>(pw.begin(), pw.begin() + sw));
    consider(edge_count_between(g, subu, subw), edge_count_between(g, subw, subu), su, sw,
             [&] { return std::pair{subu, subw}; });
  }
  return res;
}

struct ExpansionCertificate {
  std::size_t t = 0;
  // Exact: minimal k with an edge each way between every k-subsets pair;
  // t + 1 when even k = t fails. Sampled: a lower bound on that value.
  std::size_t k = 1;
  SearchMode mode = SearchMode::exact;
  // A pair of (k-1)-subsets lacking an edge in some direction, when k >= 2.
  std::optional<std::pair<VertexSet, VertexSet>> violating_pair;

  bool hypothesis_holds() const noexcept { return k <= t; }
};

inline ExpansionCertificate expansion_parameter(const Digraph& g, const VertexSet& v1, const VertexSet& v2,
                                                const SearchOptions& opt = {}) {
  v1.check_within(g.order(), "V1");
  v2.check_within(g.order(), "V2");
  if (v1.size() != v2.size()) throw InvalidParameter("bipartition sides must have equal size");
  if (v1.empty()) throw InvalidParameter("bipartition sides must be non-empty");
  if (!v1.disjoint_from(v2)) throw InvalidParameter("bipartition sides must be disjoint");
  const std::size_t t = v1.size();
  ExpansionCertificate cert;
  cert.t = t;
  cert.mode = opt.mode;

  // A has no violating partner B of size k iff fewer than k vertices of V2
  // miss N+(A), and fewer than k miss N-(A).
  std::vector<char> in_v2(g.order(), 0);
  std::vector<std::size_t> local(g.order(), 0);
  for (std::size_t j = 0; j < t; ++j) {
    in_v2[v2[j]] = 1;
    local[v2[j]] = j;
  }
  std::vector<std::uint64_t> out2(t, 0), in2(t, 0);
  auto fill_masks = [&] {
    for (std::size_t i = 0; i < t; ++i) {
      for (Vertex x : g.out_neighbors(v1[i])) {
        if (in_v2[x]) out2[i] |= std::uint64_t{1} << local[x];
      }
      for (Vertex x : g.in_neighbors(v1[i])) {
        if (in_v2[x]) in2[i] |= std::uint64_t{1} << local[x];
      }
    }
  };
  const std::uint64_t full = t == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << t) - 1;

  // Returns a violating B for A of size k, if one exists.
  auto violation_for = [&](std::uint64_t amask, std::size_t k) -> std::optional<std::uint64_t> {
    std::uint64_t reach_out = 0, reach_in = 0;
    for (std::uint64_t m = amask; m; m &= m - 1) {
      reach_out |= out2[std::countr_zero(m)];
      reach_in |= in2[std::countr_zero(m)];
    }
    for (std::uint64_t missed : {full & ~reach_out, full & ~reach_in}) {
      if (detail::popcount(missed) >= k) {
        std::uint64_t b = 0;
        for (std::size_t c = 0; c < k; ++c) {
          b |= missed & (~missed + 1);
          missed &= missed - 1;
        }
        return b;
      }
    }
    return std::nullopt;
  };

  if (opt.mode == SearchMode::exact) {
    detail::require_exact_size(t, opt.exact_limit, "bipartition side");
    fill_masks();
    for (std::size_t k = 1; k <= t; ++k) {
      std::optional<std::pair<std::uint64_t, std::uint64_t>> found;
      detail::for_each_subset_of_size(full, k, [&](std::uint64_t amask) {
        if (found) return;
        if (auto b = violation_for(amask, k)) found = std::pair{amask, *b};
      });
      if (!found) {
        cert.k = k;
        return cert;
      }
      cert.violating_pair = std::pair{detail::set_from_mask(found->first, v1.members()),
                                      detail::set_from_mask(found->second, v2.members())};
    }
    cert.k = t + 1;
    return cert;
  }

  if (t > 64) throw SizeLimitError("bipartition sides above 64 vertices are not supported");
  if (opt.trials < 1) throw InvalidParameter("sampled mode needs at least one trial");
  fill_masks();
  Rng rng(opt.seed);
  std::vector<std::size_t> idx(t);
  for (std::size_t i = 0; i < t; ++i) idx[i] = i;
  std::size_t best_violating = 0;
  for (std::size_t trial = 0; trial < opt.trials; ++trial) {
    const std::size_t k = 1 + uniform_below(rng, t);
    partial_shuffle(idx, k, rng);
    std::uint64_t amask = 0;
    for (std::size_t i = 0; i < k; ++i) amask |= std::uint64_t{1} << idx[i];
    if (k <= best_violating) continue;
    if (auto b = violation_for(amask, k)) {
      best_violating = k;
      cert.violating_pair = std::pair{detail::set_from_mask(amask, v1.members()),
                                      detail::set_from_mask(*b, v2.members())};
    }
  }
  cert.k = best_violating + 1;
  return cert;
}

}  // namespace dicycle
