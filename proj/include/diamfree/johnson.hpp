#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "diamfree/trits.hpp"

namespace diamfree::johnson {

/// All coordinates in this module are stored multiplied by 3, so every
/// quantity is an exact integer: entry values are
///   0, 3          for the 0/1 indicator vectors,
///   2, -1         for pool (i),    2, -4 for pool (ii),
///   4, 1          for pool (iii),  4, 1, -2 for pool (iv).
/// Squared distances scale by 9: the admissible set {2,4,6,8} becomes
/// {18, 36, 54, 72}.
using ScaledVec = std::vector<std::int8_t>;

int squared_distance_scaled(const ScaledVec& a, const ScaledVec& b);

/// The admissible scaled squared distances of a four-distance set
/// containing the m = 4 indicator configuration.
std::span<const int> allowed_distances();

/// All C(n,m) indicator vectors (entries 0/3), ascending lexicographic.
std::vector<ScaledVec> embedding(int n, int m);

/// All distinct permutations of a pattern, ascending lexicographic.
std::vector<ScaledVec> pattern_permutations(ScaledVec pattern);

/// The four pools of vectors addable to the (9,4) indicator configuration
/// while keeping four distances; cardinalities 36, 9, 9, 252.
struct Pools {
  std::vector<ScaledVec> p1, p2, p3, p4;
};
const Pools& candidate_pools();

/// Entrywise relabeling between pool (iv) and L_{1,6,2}: subtracting 1
/// from every scaled entry sends {-2, 1, 4} to {-3, 0, 3} = 3 * {-1, 0, 1},
/// i.e. the map is a plain translation and preserves all distances exactly
/// (scaled squared distances divide by 9).
TritVector to_lattice(const ScaledVec& v);
ScaledVec from_lattice(const TritVector& v);

/// Pool (iv) vectors compatible with every chosen pool (ii) vector, i.e.
/// at an admissible distance from each of them.
std::vector<ScaledVec> compat_iv(std::span<const ScaledVec> chosen_p2);

/// Exact size bound for 1 <= t <= 6, computed as the component sum
/// 171 + t + frak_M(6-t) + t*C(9-t,2); equals t_bound_cubic(t).
std::uint64_t t_bound(int t);

/// (2t^3 - 27t^2 + 31t)/6 + 257, evaluated in exact integers.
std::int64_t t_bound_cubic(int t);

/// Exact additive capacity for t in 7..9: the pool (iv) survivors of the
/// t-element pool (ii) choice and the independence number of their
/// conflict graph. total = 171 + t + alpha.
struct TailCapacity {
  int t = 0;
  std::size_t survivors = 0;
  int alpha = 0;
  std::uint64_t total = 0;
};
TailCapacity tail_capacity(int t);

enum class Variant { X6, Y6, Z6 };
const char* variant_name(Variant v);

/// One of the three 258-point extremal sets: the 126 indicator vectors,
/// pools (i) and (iii), the pool (ii) vector with -4 first, and the image
/// of X_6 / Y_6 / Z_6 inside pool (iv).
std::vector<ScaledVec> assemble_extremal(Variant v);

struct Report {
  std::string variant;
  std::size_t size = 0;
  std::vector<int> distance_set;  // scaled, sorted distinct
  bool four_distance = false;
  bool maximal = false;           // no pool vector addable
  std::vector<std::string> violations;
};
Report verify_extremal(Variant v);

}  // namespace diamfree::johnson
