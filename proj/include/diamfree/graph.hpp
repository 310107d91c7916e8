#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "diamfree/trits.hpp"

namespace diamfree {

/// Thrown by bipartite_view when a would-be side contains an internal edge.
class InternalEdgeError : public std::runtime_error {
 public:
  InternalEdgeError(std::string msg, std::uint32_t u, std::uint32_t v)
      : std::runtime_error(std::move(msg)), offending{u, v} {}
  std::pair<std::uint32_t, std::uint32_t> offending;
};

/// Graph on a point set whose edges are the pairs at squared distance
/// >= threshold_sq. With threshold equal to the ground set's squared
/// diameter this is the diameter graph. Immutable after construction;
/// adjacency is one bitset row per vertex.
struct DiameterGraph {
  std::vector<TritVector> vertices;   // stable indices, construction order
  int threshold_sq = 0;
  int ground_diameter_sq = 0;         // max pairwise distance among vertices
  std::size_t words = 0;              // row width
  std::vector<std::uint64_t> adj;     // |V| rows of `words` words
  std::uint64_t edge_count = 0;

  std::size_t order() const { return vertices.size(); }
  const std::uint64_t* row(std::uint32_t v) const { return adj.data() + v * words; }
  bool has_edge(std::uint32_t u, std::uint32_t v) const;
  std::uint32_t degree(std::uint32_t v) const;
  std::vector<std::uint32_t> neighbors(std::uint32_t v) const;
};

/// Edges are exactly the pairs at squared distance >= threshold_sq.
/// Requires a nonempty point set of uniform length and threshold_sq > 0.
DiameterGraph build_graph(std::vector<TritVector> points, int threshold_sq);

/// build_graph at the ground set's own squared diameter (the diameter
/// graph). A single point yields an edgeless graph.
DiameterGraph diameter_graph(std::vector<TritVector> points);

/// Subgraph on the given vertices, keeping threshold metadata. Vertices are
/// re-indexed in the order given. Throws std::out_of_range on a bad index.
DiameterGraph induced_subgraph(const DiameterGraph& g,
                               std::span<const std::uint32_t> keep);

/// Vertices of degree zero, ascending.
std::vector<std::uint32_t> isolated_vertices(const DiameterGraph& g);

/// Two disjoint vertex sets with only crossing edges exposed.
struct BipartiteView {
  const DiameterGraph* graph = nullptr;
  std::vector<std::uint32_t> left;    // ascending
  std::vector<std::uint32_t> right;   // ascending
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // (left, right)
};

/// Validates that neither side spans an edge; reports the offending pair
/// otherwise. Sides must be disjoint.
BipartiteView bipartite_view(const DiameterGraph& g,
                             std::span<const std::uint32_t> left,
                             std::span<const std::uint32_t> right);

/// Export: one-line JSON header {signature?, threshold_sq, vertices}, then
/// one `u v` line per edge (u < v), ascending.
void export_graph(const DiameterGraph& g, std::ostream& os);

}  // namespace diamfree
