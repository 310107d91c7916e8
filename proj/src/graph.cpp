#include "diamfree/graph.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "diamfree/bitwords.hpp"
#include "diamfree/kernels.hpp"

#include "json.hpp"

namespace diamfree {

bool DiameterGraph::has_edge(std::uint32_t u, std::uint32_t v) const {
  return bits::test_bit(row(u), v);
}

std::uint32_t DiameterGraph::degree(std::uint32_t v) const {
  return static_cast<std::uint32_t>(bits::popcount(row(v), words));
}

std::vector<std::uint32_t> DiameterGraph::neighbors(std::uint32_t v) const {
  std::vector<std::uint32_t> out;
  bits::for_each_bit(row(v), words, [&](std::size_t u) {
    out.push_back(static_cast<std::uint32_t>(u));
  });
  return out;
}

DiameterGraph build_graph(std::vector<TritVector> points, int threshold_sq) {
  if (points.empty()) throw std::invalid_argument("build_graph: empty point set");
  if (threshold_sq <= 0) throw std::invalid_argument("build_graph: threshold_sq must be > 0");
  const std::uint8_t n = points.front().n;
  for (const TritVector& p : points)
    if (p.n != n) throw std::invalid_argument("build_graph: mixed lengths");

  DiameterGraph g;
  const std::size_t nv = points.size();
  g.vertices = std::move(points);
  g.threshold_sq = threshold_sq;
  g.words = bits::words_for(nv);
  g.adj.assign(nv * g.words, 0);

  // SoA mask arrays feed the batched distance kernel one row at a time.
  std::vector<std::uint64_t> negs(nv), poss(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    negs[i] = g.vertices[i].neg;
    poss[i] = g.vertices[i].pos;
  }
  const auto& ops = kernels::active_ops();
  std::vector<std::uint16_t> dist(nv);
  int diam = 0;
  for (std::size_t u = 0; u < nv; ++u) {
    ops.trit_distance_batch(negs[u], poss[u], negs.data() + u + 1, poss.data() + u + 1,
                            nv - u - 1, dist.data());
    std::uint64_t* ru = g.adj.data() + u * g.words;
    for (std::size_t j = 0; j < nv - u - 1; ++j) {
      const std::size_t v = u + 1 + j;
      const int d = dist[j];
      diam = std::max(diam, d);
      if (d >= threshold_sq) {
        bits::set_bit(ru, v);
        bits::set_bit(g.adj.data() + v * g.words, u);
        ++g.edge_count;
      }
    }
  }
  g.ground_diameter_sq = diam;
  return g;
}

DiameterGraph diameter_graph(std::vector<TritVector> points) {
  if (points.empty()) throw std::invalid_argument("diameter_graph: empty point set");
  int diam = 1;  // single point: positive threshold, no edges
  if (points.size() >= 2) diam = std::max(1, diameter_sq(points));
  return build_graph(std::move(points), diam);
}

DiameterGraph induced_subgraph(const DiameterGraph& g,
                               std::span<const std::uint32_t> keep) {
  DiameterGraph s;
  s.threshold_sq = g.threshold_sq;
  s.ground_diameter_sq = g.ground_diameter_sq;
  const std::size_t nv = keep.size();
  s.vertices.reserve(nv);
  for (std::uint32_t v : keep) {
    if (v >= g.order()) throw std::out_of_range("induced_subgraph: vertex index out of range");
    s.vertices.push_back(g.vertices[v]);
  }
  s.words = bits::words_for(nv);
  s.adj.assign(nv * s.words, 0);
  for (std::size_t i = 0; i < nv; ++i) {
    for (std::size_t j = i + 1; j < nv; ++j) {
      if (g.has_edge(keep[i], keep[j])) {
        bits::set_bit(s.adj.data() + i * s.words, j);
        bits::set_bit(s.adj.data() + j * s.words, i);
        ++s.edge_count;
      }
    }
  }
  return s;
}

std::vector<std::uint32_t> isolated_vertices(const DiameterGraph& g) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t v = 0; v < g.order(); ++v)
    if (g.degree(v) == 0) out.push_back(v);
  return out;
}

BipartiteView bipartite_view(const DiameterGraph& g,
                             std::span<const std::uint32_t> left,
                             std::span<const std::uint32_t> right) {
  BipartiteView view;
  view.graph = &g;
  view.left.assign(left.begin(), left.end());
  view.right.assign(right.begin(), right.end());
  std::sort(view.left.begin(), view.left.end());
  std::sort(view.right.begin(), view.right.end());
  for (std::uint32_t v : view.left)
    if (std::binary_search(view.right.begin(), view.right.end(), v))
      throw std::invalid_argument("bipartite_view: sides not disjoint");

  auto check_side = [&](const std::vector<std::uint32_t>& side, const char* name) {
    for (std::size_t i = 0; i < side.size(); ++i)
      for (std::size_t j = i + 1; j < side.size(); ++j)
        if (g.has_edge(side[i], side[j]))
          throw InternalEdgeError(std::string("bipartite_view: edge inside ") + name +
                                      " side: " + std::to_string(side[i]) + " -- " +
                                      std::to_string(side[j]),
                                  side[i], side[j]);
  };
  check_side(view.left, "left");
  check_side(view.right, "right");

  for (std::uint32_t u : view.left)
    for (std::uint32_t v : view.right)
      if (g.has_edge(u, v)) view.edges.emplace_back(u, v);
  return view;
}

void export_graph(const DiameterGraph& g, std::ostream& os) {
  nlohmann::json header;
  // All vertices share a signature only when the point set is one L_mkl;
  // report it when uniform.
  const Signature sig0 = signature_of(g.vertices.front());
  bool uniform = true;
  for (const TritVector& v : g.vertices)
    if (signature_of(v) != sig0) { uniform = false; break; }
  if (uniform) header["signature"] = {sig0.m, sig0.k, sig0.l};
  header["threshold_sq"] = g.threshold_sq;
  std::vector<std::string> verts;
  verts.reserve(g.order());
  for (const TritVector& v : g.vertices) verts.push_back(to_trit_string(v));
  header["vertices"] = verts;
  os << header.dump() << '\n';
  for (std::uint32_t u = 0; u < g.order(); ++u)
    bits::for_each_bit(g.row(u), g.words, [&](std::size_t v) {
      if (v > u) os << u << ' ' << v << '\n';
    });
}

}  // namespace diamfree
