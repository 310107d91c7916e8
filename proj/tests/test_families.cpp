#include <set>

#include "diamfree/families.hpp"
#include "diamfree/graph.hpp"
#include "diamfree/solver.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace diamfree;

TEST_SUITE("families") {

TEST_CASE("the closed-form series") {
  CHECK(frak_M(1) == 6);
  CHECK(frak_M(2) == 12);
  CHECK(frak_M(3) == 22);
  CHECK(frak_M(4) == 37);
  CHECK(frak_M(5) == 58);
  CHECK(frak_M(6) == 86);
  CHECK(frak_M(0) == 3);
  CHECK_THROWS_AS(frak_M(-1), std::invalid_argument);
}

TEST_CASE("exact maxima for solved signatures") {
  auto v = M_exact(Signature{2, 1, 2});
  REQUIRE(v.has_value());
  CHECK(v->value == 15);

  v = M_exact(Signature{1, 1, 2});
  REQUIRE(v.has_value());
  CHECK(v->value == 6);

  v = M_exact(Signature{1, 5, 2});
  REQUIRE(v.has_value());
  CHECK(v->value == 58);

  // symmetry under reversal
  for (int k = 1; k <= 6; ++k) {
    const auto a = M_exact(Signature{1, k, 2});
    const auto b = M_exact(Signature{2, k, 1});
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->value == b->value);
    CHECK(a->value == frak_M(k));
  }

  // solved-case overlap must agree: (1,1,2) satisfies both m+k <= l and the
  // series; (1,0,2) only the first
  CHECK(M_exact(Signature{1, 0, 2})->value == 1);
  CHECK(!M_exact(Signature{2, 3, 3}).has_value());
}

TEST_CASE("S/T/U cardinalities and definitions") {
  CHECK(S_set(2, 1).size() == 6);  // C(4,2)
  for (int k = 1; k <= 6; ++k) {
    CHECK(T_set(k, k + 1).size() == 2);
    std::uint64_t total = 0;
    for (int i = 1; i <= k + 1; ++i) {
      const Family s = S_set(k, i);
      CHECK(s.size() == binomial(k + 3 - i, 2));
      total += s.size();
    }
    CHECK(total + T_set(k, k + 1).size() == frak_M(k));
  }

  // definitional filters over the full lattice agree with the constructions
  const int k = 3, n = k + 3;
  const auto lat = generate(Signature{1, k, 2});
  for (int i = 1; i <= k + 2; ++i) {
    std::vector<TritVector> s_filter, t_filter;
    for (const TritVector& v : lat) {
      bool zeros = true;
      for (int p = 0; p < i - 1; ++p) zeros = zeros && v.entry(p) == 0;
      if (zeros && v.entry(i - 1) == -1) s_filter.push_back(v);
      if (zeros && v.entry(i - 1) == 1) t_filter.push_back(v);
    }
    CHECK(s_filter == S_set(k, i).members);
    CHECK(t_filter == T_set(k, i).members);
  }
  for (int i = 2; i <= k + 2; ++i) {
    std::vector<TritVector> u_filter;
    for (const TritVector& v : lat) {
      if (v.entry(0) != 1) continue;
      int lpos = -1;
      for (int p = 1; p < n; ++p)
        if (v.entry(p) == -1) lpos = p;  // 0-based; unique
      if (lpos < 1 || lpos > i - 1) continue;
      bool plus_after = false;
      for (int p = lpos + 1; p < n; ++p) plus_after = plus_after || v.entry(p) == 1;
      if (plus_after) u_filter.push_back(v);
    }
    CHECK(u_filter == U_set(k, i).members);
  }

  CHECK_THROWS_AS(S_set(2, 5), std::out_of_range);
  CHECK_THROWS_AS(U_set(2, 1), std::out_of_range);
}

TEST_CASE("the three extremal families: size, independence, diameter") {
  for (int k = 1; k <= 6; ++k) {
    std::vector<Family> fams{X_family(k), Y_family(k)};
    if (k >= 2) fams.push_back(Z_family(k));
    for (const Family& f : fams) {
      CHECK(f.size() == frak_M(k));
      int maxd = 0;
      for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = i + 1; j < f.size(); ++j)
          maxd = std::max(maxd, squared_distance(f.members[i], f.members[j]));
      CHECK(maxd <= 8);
    }
  }
  // Y_1 is the half-space with +1 first
  const Family y1 = Y_family(1);
  CHECK(y1.size() == 6);
  for (const TritVector& v : y1.members) CHECK(v.entry(0) == 1);
}

TEST_CASE("the exceptional 11-point families") {
  const Family v2 = V2_family(), w2 = W2_family();
  CHECK(v2.size() == 11);
  CHECK(w2.size() == 11);
  const DiameterGraph g = build_graph(generate(Signature{1, 2, 2}), 10);
  auto index_set = [&](const Family& f) {
    std::vector<std::uint32_t> idx;
    for (std::uint32_t i = 0; i < g.order(); ++i)
      if (f.contains(g.vertices[i])) idx.push_back(i);
    return idx;
  };
  const auto v2idx = index_set(v2), w2idx = index_set(w2);
  REQUIRE(v2idx.size() == 11);
  REQUIRE(w2idx.size() == 11);
  CHECK(is_independent(g, v2idx));
  CHECK(is_independent(g, w2idx));
  // not extendable: every one of the 19 remaining vectors collides
  for (const auto& idx : {v2idx, w2idx}) {
    std::set<std::uint32_t> inside(idx.begin(), idx.end());
    for (std::uint32_t v = 0; v < g.order(); ++v) {
      if (inside.count(v)) continue;
      bool collides = false;
      for (std::uint32_t u : idx) collides = collides || g.has_edge(u, v);
      CHECK(collides);
    }
  }
}

TEST_CASE("recursive construction and its size formula") {
  for (int k = 1; k <= 6; ++k)
    CHECK(frak_M_general(1, k, 2) == frak_M(k));
  CHECK(frak_M_general(1, 3, 3) == 38);

  for (int k = 1; k <= 5; ++k) {
    const Family f = recursive_family(1, k, 2);
    CHECK(f.size() == frak_M_general(1, k, 2));
    const auto lat = generate(Signature{1, k, 2});
    const int diam = diameter_sq(lat);
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j)
        CHECK(squared_distance(f.members[i], f.members[j]) < diam);
  }
  {
    const Family f = recursive_family(1, 3, 3);
    // the star seed gives 30 + 20 = 50 here, strictly above the
    // closed-form lower bound of 38
    CHECK(frak_M_general(1, 3, 3) == 38);
    CHECK(f.size() == 50);
    const auto lat = generate(Signature{1, 3, 3});
    const int diam = diameter_sq(lat);
    CHECK(diam == lattice_diameter_sq(Signature{1, 3, 3}));
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j)
        CHECK(squared_distance(f.members[i], f.members[j]) < diam);
  }
  CHECK_THROWS_AS(recursive_family(2, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(recursive_family(1, 0, 3), std::invalid_argument);
}

TEST_CASE("zero-column averaging on the constructed families, k = 4 and 5") {
  for (int k : {4, 5}) {
    const Family f = recursive_family(1, k, 2);
    const ColumnCounts c = column_counts(f.members);
    int best = 0;
    for (int z : c.zero) best = std::max(best, z);
    CHECK(best >= static_cast<int>(frak_M(k - 1)));
  }
}

TEST_CASE("antipodal structure of maximum sets when m = l") {
  for (const Signature sig : {Signature{1, 0, 1}, Signature{1, 1, 1}}) {
    const DiameterGraph g = diameter_graph(generate(sig));
    const MisResult r = enumerate_maximum(g);
    REQUIRE(r.enumerated.has_value());
    CHECK(r.enumerated->size() == (std::size_t{1} << (g.order() / 2)));
    for (const auto& s : *r.enumerated) {
      std::set<std::uint32_t> inside(s.begin(), s.end());
      for (std::uint32_t v = 0; v < g.order(); ++v) {
        const std::uint32_t u = g.neighbors(v)[0];
        CHECK(inside.count(v) + inside.count(u) == 1);
      }
    }
  }
}

TEST_CASE("bound table") {
  const BoundTable table = bound_table(7);
  const auto& e112 = table.at(Signature{1, 1, 2});
  CHECK(e112.exact);
  CHECK(e112.value == 6);
  const auto& e212 = table.at(Signature{2, 1, 2});
  CHECK(e212.exact);
  CHECK(e212.value == 15);
  const auto& e133 = table.at(Signature{1, 3, 3});
  CHECK(!e133.exact);
  CHECK(e133.value == 38);
  // open-range signatures carry the range note
  bool found_lower = false;
  for (const auto& [sig, entry] : table)
    if (!entry.exact) {
      found_lower = true;
      CHECK(entry.value > 0);
      CHECK(entry.source.find("open") != std::string::npos);
    }
  CHECK(found_lower);
}

TEST_CASE("family JSON round trip") {
  const Family f = X_family(3);
  const std::string text = family_to_json(f);
  const Family g = family_from_json(text);
  CHECK(g.sig == f.sig);
  CHECK(g.name == f.name);
  CHECK(g.members == f.members);
  CHECK(family_to_json(g) == text);  // byte-stable
}

}  // TEST_SUITE
