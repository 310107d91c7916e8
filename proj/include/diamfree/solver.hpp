#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "diamfree/graph.hpp"

namespace diamfree {

/// Thrown when an enumeration exceeds the configured result limit.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by the enumeration entry points on deadline expiry (a complete
/// enumeration that ran out of time has no useful partial result).
class TimeoutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A set of pairwise-disjoint edges, stored as graph vertex index pairs.
struct Matching {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::size_t size() const { return pairs.size(); }
};

/// Maximum-cardinality matching of a bipartite view (Hopcroft-Karp).
/// Deterministic for a fixed vertex order.
Matching max_matching(const BipartiteView& view);

/// |V(g)| - |maximum matching|: an upper bound on the independence number
/// of g when the view covers all of g's vertices (Konig gives equality on
/// bipartite graphs). Throws std::invalid_argument if the view does not
/// cover g.
int matching_bound(const DiameterGraph& g, const BipartiteView& view);

/// Forced-vertex closure under the tight-matching rule: if a maximum
/// independent set I has size |V| - |M|, then every matched pair has
/// exactly one endpoint in I; so for z in I and a neighbor y of z, the
/// partner of y is forced into I. A contradiction (a forced vertex
/// adjacent to the closure) is a normal outcome, not an error.
struct Propagation {
  std::vector<std::uint32_t> forced;    // closure incl. seeds, ascending
  std::vector<std::uint32_t> excluded;  // neighbors of the closure, ascending
  bool contradiction = false;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> conflict;
};
Propagation propagate_matching(const DiameterGraph& g, const Matching& m,
                               std::span<const std::uint32_t> seed);

struct SolveOptions {
  int threads = 0;                       // 0 = all hardware threads
  double time_limit_s = 300.0;
  std::uint64_t enum_limit = 1'000'000;
  std::size_t vertex_limit = 1000;
};

struct MisResult {
  int alpha = 0;
  std::vector<std::uint32_t> witness;    // ascending, size alpha
  std::optional<std::vector<std::vector<std::uint32_t>>> enumerated;
  std::uint64_t nodes = 0;               // search-tree statistic (diagnostic)
  bool timed_out = false;
  int lower_bound = 0;                   // meaningful when timed_out
  int upper_bound = 0;
};

/// Exact independence number with one witness. Branch and bound on the
/// max-degree vertex (exclude before include), with degree-0/1 reduction,
/// component splitting, exact closure of bipartite and max-degree-2
/// residuals, and a greedy clique-cover bound. The result value does not
/// depend on the thread count.
MisResult independence_number(const DiameterGraph& g, const SolveOptions& opts = {});

/// All maximum independent sets, in ascending lexicographic vertex order.
/// Complete search; deterministic across thread counts.
MisResult enumerate_maximum(const DiameterGraph& g, const SolveOptions& opts = {});

/// All independent sets of exactly size s, ascending lexicographic.
std::vector<std::vector<std::uint32_t>> enumerate_size(const DiameterGraph& g, int s,
                                                       const SolveOptions& opts = {});

/// True if the set spans no edge of g (used to re-verify every reported set).
bool is_independent(const DiameterGraph& g, std::span<const std::uint32_t> set);

}  // namespace diamfree
