#pragma once

// Test-only oracles, deliberately independent of the library's solver and
// canonicalization paths: plain subset scans and vanilla recursion with no
// clique-cover, matching or reduction machinery.

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "diamfree/graph.hpp"
#include "diamfree/trits.hpp"

namespace oracles {

/// Exact maximum independent set size by scanning all 2^n subsets.
inline int mis_subset_scan(const std::vector<std::uint64_t>& adj) {
  const std::size_t n = adj.size();
  if (n > 25) throw std::invalid_argument("mis_subset_scan: too many vertices");
  int best = 0;
  const std::uint64_t end = std::uint64_t{1} << n;
  for (std::uint64_t s = 0; s < end; ++s) {
    bool ok = true;
    for (std::uint64_t rest = s; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      if (adj[static_cast<std::size_t>(v)] & s) {
        ok = false;
        break;
      }
    }
    if (ok) best = std::max(best, std::popcount(s));
  }
  return best;
}

/// Plain take/skip recursion on the lowest remaining vertex; the only
/// pruning is the trivial candidate-count bound. Handles up to 64 vertices.
inline void mis_plain_rec(const std::vector<std::uint64_t>& adj, std::uint64_t cand,
                          int chosen, int& best) {
  if (chosen + std::popcount(cand) <= best) return;
  if (!cand) {
    best = std::max(best, chosen);
    return;
  }
  const int v = std::countr_zero(cand);
  // take v
  mis_plain_rec(adj, cand & ~adj[static_cast<std::size_t>(v)] & ~(std::uint64_t{1} << v),
                chosen + 1, best);
  // skip v
  mis_plain_rec(adj, cand & ~(std::uint64_t{1} << v), chosen, best);
}

inline int mis_plain(const std::vector<std::uint64_t>& adj) {
  const std::size_t n = adj.size();
  if (n > 64) throw std::invalid_argument("mis_plain: too many vertices");
  int best = 0;
  const std::uint64_t cand = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  mis_plain_rec(adj, cand, 0, best);
  return best;
}

/// Adjacency masks of a DiameterGraph (n <= 64).
inline std::vector<std::uint64_t> adjacency_masks(const diamfree::DiameterGraph& g) {
  if (g.order() > 64) throw std::invalid_argument("adjacency_masks: graph too large");
  std::vector<std::uint64_t> adj(g.order(), 0);
  for (std::uint32_t u = 0; u < g.order(); ++u)
    for (std::uint32_t v : g.neighbors(u)) adj[u] |= std::uint64_t{1} << v;
  return adj;
}

/// Arbitrary test graph wrapped in the library's graph type: vertex
/// payloads are dummies, only the adjacency matters.
inline diamfree::DiameterGraph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  using namespace diamfree;
  DiameterGraph g;
  g.vertices.assign(static_cast<std::size_t>(n), parse_trits("0"));
  g.threshold_sq = 1;
  g.ground_diameter_sq = 1;
  g.words = (static_cast<std::size_t>(n) + 63) / 64;
  g.adj.assign(static_cast<std::size_t>(n) * g.words, 0);
  for (auto [u, v] : edges) {
    if (u == v) continue;
    if (!g.has_edge(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v))) {
      g.adj[static_cast<std::size_t>(u) * g.words + static_cast<std::size_t>(v) / 64] |=
          std::uint64_t{1} << (v % 64);
      g.adj[static_cast<std::size_t>(v) * g.words + static_cast<std::size_t>(u) / 64] |=
          std::uint64_t{1} << (u % 64);
      ++g.edge_count;
    }
  }
  return g;
}

inline diamfree::DiameterGraph random_graph(int n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return make_graph(n, edges);
}

inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<int> d(0, i);
    std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(d(rng))]);
  }
  return p;
}

}  // namespace oracles
