#include "diamfree/johnson.hpp"

#include <algorithm>
#include <set>

#include "diamfree/families.hpp"
#include "diamfree/graph.hpp"
#include "diamfree/solver.hpp"

namespace diamfree::johnson {

namespace {

constexpr std::array<int, 4> kAllowed{18, 36, 54, 72};

bool admissible(int d2) {
  return d2 == 18 || d2 == 36 || d2 == 54 || d2 == 72;
}

std::string vec_str(const ScaledVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(static_cast<int>(v[i]));
  }
  s += ")/3";
  return s;
}

}  // namespace

int squared_distance_scaled(const ScaledVec& a, const ScaledVec& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("squared_distance_scaled: length mismatch");
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int t = static_cast<int>(a[i]) - static_cast<int>(b[i]);
    d += t * t;
  }
  return d;
}

std::span<const int> allowed_distances() { return kAllowed; }

std::vector<ScaledVec> pattern_permutations(ScaledVec pattern) {
  std::sort(pattern.begin(), pattern.end());
  std::vector<ScaledVec> out;
  do {
    out.push_back(pattern);
  } while (std::next_permutation(pattern.begin(), pattern.end()));
  return out;
}

std::vector<ScaledVec> embedding(int n, int m) {
  if (m < 1 || m >= n) throw std::invalid_argument("embedding: requires 1 <= m < n");
  ScaledVec pattern(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < m; ++i) pattern[static_cast<std::size_t>(n - 1 - i)] = 3;
  return pattern_permutations(std::move(pattern));
}

const Pools& candidate_pools() {
  static const Pools pools = [] {
    Pools p;
    p.p1 = pattern_permutations(ScaledVec{2, 2, 2, 2, 2, 2, 2, -1, -1});
    p.p2 = pattern_permutations(ScaledVec{2, 2, 2, 2, 2, 2, 2, 2, -4});
    p.p3 = pattern_permutations(ScaledVec{4, 1, 1, 1, 1, 1, 1, 1, 1});
    p.p4 = pattern_permutations(ScaledVec{4, 4, 1, 1, 1, 1, 1, 1, -2});
    return p;
  }();
  return pools;
}

TritVector to_lattice(const ScaledVec& v) {
  if (v.size() != 9) throw std::invalid_argument("to_lattice: expected 9 coordinates");
  TritVector t;
  t.n = 9;
  for (std::size_t i = 0; i < 9; ++i) {
    switch (v[i]) {
      case -2: t.neg |= std::uint64_t{1} << i; break;
      case 1: break;
      case 4: t.pos |= std::uint64_t{1} << i; break;
      default:
        throw std::invalid_argument("to_lattice: entry " + std::to_string(v[i]) +
                                    " is not in the pool-(iv) alphabet");
    }
  }
  return t;
}

ScaledVec from_lattice(const TritVector& v) {
  if (v.n != 9) throw std::invalid_argument("from_lattice: expected 9 coordinates");
  ScaledVec out(9, 1);
  for (int i = 0; i < 9; ++i) {
    const int e = v.entry(i);
    if (e < 0) out[static_cast<std::size_t>(i)] = -2;
    else if (e > 0) out[static_cast<std::size_t>(i)] = 4;
  }
  return out;
}

std::vector<ScaledVec> compat_iv(std::span<const ScaledVec> chosen_p2) {
  std::vector<ScaledVec> out;
  for (const ScaledVec& y : candidate_pools().p4) {
    bool ok = true;
    for (const ScaledVec& x : chosen_p2)
      if (!admissible(squared_distance_scaled(x, y))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(y);
  }
  return out;
}

std::uint64_t t_bound(int t) {
  if (t < 1 || t > 6) throw std::invalid_argument("t_bound: t must be in 1..6");
  return 171 + static_cast<std::uint64_t>(t) + frak_M(6 - t) +
         static_cast<std::uint64_t>(t) * binomial(9 - t, 2);
}

std::int64_t t_bound_cubic(int t) {
  const std::int64_t tt = t;
  const std::int64_t num = 2 * tt * tt * tt - 27 * tt * tt + 31 * tt;
  if (num % 6 != 0) throw std::logic_error("t_bound_cubic: non-integral value");
  return num / 6 + 257;
}

TailCapacity tail_capacity(int t) {
  if (t < 7 || t > 9) throw std::invalid_argument("tail_capacity: t must be in 7..9");
  // The t chosen pool (ii) vectors have their -4 in coordinates 1..t.
  std::vector<ScaledVec> chosen;
  for (int i = 0; i < t; ++i) {
    ScaledVec x(9, 2);
    x[static_cast<std::size_t>(i)] = -4;
    chosen.push_back(std::move(x));
  }
  TailCapacity cap;
  cap.t = t;
  const std::vector<ScaledVec> survivors = compat_iv(chosen);
  cap.survivors = survivors.size();
  if (!survivors.empty()) {
    // Conflicts among survivors are exactly distance 90 pairs, i.e. the
    // maximum distance of their L_{1,6,2} images.
    std::vector<TritVector> images;
    images.reserve(survivors.size());
    for (const ScaledVec& v : survivors) images.push_back(to_lattice(v));
    const DiameterGraph g = build_graph(std::move(images), 10);
    cap.alpha = independence_number(g).alpha;
  }
  cap.total = 171 + static_cast<std::uint64_t>(t) + static_cast<std::uint64_t>(cap.alpha);
  return cap;
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::X6: return "X6";
    case Variant::Y6: return "Y6";
    case Variant::Z6: return "Z6";
  }
  return "?";
}

std::vector<ScaledVec> assemble_extremal(Variant v) {
  std::vector<ScaledVec> out = embedding(9, 4);
  const Pools& pools = candidate_pools();
  out.insert(out.end(), pools.p1.begin(), pools.p1.end());
  out.insert(out.end(), pools.p3.begin(), pools.p3.end());
  ScaledVec special(9, 2);
  special[0] = -4;
  out.push_back(std::move(special));
  const Family fam = v == Variant::X6   ? X_family(6)
                     : v == Variant::Y6 ? Y_family(6)
                                        : Z_family(6);
  for (const TritVector& x : fam.members) out.push_back(from_lattice(x));
  return out;
}

Report verify_extremal(Variant v) {
  Report rep;
  rep.variant = variant_name(v);
  const std::vector<ScaledVec> set = assemble_extremal(v);
  rep.size = set.size();

  std::set<int> dist;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      const int d = squared_distance_scaled(set[i], set[j]);
      dist.insert(d);
      if (!admissible(d))
        rep.violations.push_back("pair " + vec_str(set[i]) + " , " + vec_str(set[j]) +
                                 " at scaled squared distance " + std::to_string(d));
    }
  rep.distance_set.assign(dist.begin(), dist.end());
  rep.four_distance =
      dist == std::set<int>(kAllowed.begin(), kAllowed.end()) && rep.violations.empty();

  // Maximality against all pool vectors not already in the set.
  std::set<ScaledVec> members(set.begin(), set.end());
  const Pools& pools = candidate_pools();
  bool maximal = true;
  for (const auto* pool : {&pools.p1, &pools.p2, &pools.p3, &pools.p4}) {
    for (const ScaledVec& cand : *pool) {
      if (members.count(cand)) continue;
      bool conflicts = false;
      for (const ScaledVec& m : set)
        if (!admissible(squared_distance_scaled(cand, m))) {
          conflicts = true;
          break;
        }
      if (!conflicts) {
        maximal = false;
        rep.violations.push_back("pool vector " + vec_str(cand) +
                                 " is addable without breaking the distance set");
      }
    }
  }
  rep.maximal = maximal;
  return rep;
}

}  // namespace diamfree::johnson
