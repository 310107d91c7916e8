#include <set>

#include "diamfree/canon.hpp"
#include "diamfree/families.hpp"
#include "diamfree/johnson.hpp"
#include "doctest.h"

using namespace diamfree;
namespace jn = diamfree::johnson;

TEST_SUITE("johnson") {

TEST_CASE("indicator embedding") {
  const auto j94 = jn::embedding(9, 4);
  CHECK(j94.size() == 126);
  std::set<int> dist;
  for (std::size_t i = 0; i < j94.size(); ++i)
    for (std::size_t j = i + 1; j < j94.size(); ++j)
      dist.insert(jn::squared_distance_scaled(j94[i], j94[j]));
  CHECK(dist == std::set<int>{18, 36, 54, 72});

  const auto j21 = jn::embedding(2, 1);
  REQUIRE(j21.size() == 2);
  CHECK(jn::squared_distance_scaled(j21[0], j21[1]) == 18);
}

TEST_CASE("pool cardinalities and compatibility with the indicator set") {
  const jn::Pools& pools = jn::candidate_pools();
  CHECK(pools.p1.size() == 36);
  CHECK(pools.p2.size() == 9);
  CHECK(pools.p3.size() == 9);
  CHECK(pools.p4.size() == 252);

  const auto j94 = jn::embedding(9, 4);
  for (const auto* pool : {&pools.p1, &pools.p2, &pools.p3, &pools.p4})
    for (const auto& x : *pool) {
      int sum = 0;
      for (auto e : x) sum += e;
      CHECK(sum == 12);  // every vector lies on the same hyperplane as the
                         // indicator set (coordinate sum 4, scaled 12)
      for (const auto& y : j94) {
        const int d = jn::squared_distance_scaled(x, y);
        CHECK((d == 18 || d == 36 || d == 54 || d == 72));
      }
    }
}

TEST_CASE("pool (iv) is an exact isometric copy of L_{1,6,2}") {
  const auto& p4 = jn::candidate_pools().p4;
  std::vector<TritVector> images;
  for (const auto& v : p4) {
    const TritVector t = jn::to_lattice(v);
    CHECK(jn::from_lattice(t) == v);
    images.push_back(t);
  }
  // all 252*251/2 = 31626 pairwise squared distances preserved exactly
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < p4.size(); ++i)
    for (std::size_t j = i + 1; j < p4.size(); ++j) {
      CHECK(jn::squared_distance_scaled(p4[i], p4[j]) ==
            9 * squared_distance(images[i], images[j]));
      ++pairs;
    }
  CHECK(pairs == 31626);
}

TEST_CASE("the first pool-(iv) slice maps onto X_6") {
  // vectors whose -2 entry precedes both 4 entries, plus the two tail
  // vectors; their lattice image must be exactly X_6
  const auto& p4 = jn::candidate_pools().p4;
  std::vector<TritVector> image;
  for (const auto& v : p4) {
    int minus = -1, first4 = 10;
    for (int i = 0; i < 9; ++i) {
      if (v[static_cast<std::size_t>(i)] == -2) minus = i;
      if (v[static_cast<std::size_t>(i)] == 4) first4 = std::min(first4, i);
    }
    if (minus < first4) image.push_back(jn::to_lattice(v));
  }
  // the two explicit tail vectors
  image.push_back(jn::to_lattice(jn::ScaledVec{1, 1, 1, 1, 1, 1, 4, -2, 4}));
  image.push_back(jn::to_lattice(jn::ScaledVec{1, 1, 1, 1, 1, 1, 4, 4, -2}));

  const Family x6 = X_family(6);
  const Family img = make_family(Signature{1, 6, 2}, "image", std::move(image));
  CHECK(img.members == x6.members);
}

TEST_CASE("compatibility filtering against chosen pool-(ii) vectors") {
  CHECK(jn::compat_iv({}).size() == 252);

  jn::ScaledVec chosen(9, 2);
  chosen[0] = -4;
  const auto allowed = jn::compat_iv(std::vector<jn::ScaledVec>{chosen});
  // direct count of pool (iv) vectors without 4 in the first coordinate:
  // 168 with 1 there plus 28 with -2 there
  CHECK(allowed.size() == 196);
  std::size_t with_one = 0, with_minus = 0;
  for (const auto& v : allowed) {
    CHECK(v[0] != 4);
    if (v[0] == 1) ++with_one;
    if (v[0] == -2) ++with_minus;
  }
  CHECK(with_one == 168);
  CHECK(with_minus == 28);
}

TEST_CASE("size bounds for t = 1..6 match the cubic and peak only at t = 1") {
  const std::vector<std::uint64_t> expected{258, 252, 241, 227, 212, 198};
  for (int t = 1; t <= 6; ++t) {
    CHECK(jn::t_bound(t) == expected[static_cast<std::size_t>(t - 1)]);
    CHECK(static_cast<std::int64_t>(jn::t_bound(t)) == jn::t_bound_cubic(t));
    if (t > 1) CHECK(jn::t_bound(t) < 258);
  }
}

TEST_CASE("exact tail capacities for t = 7, 8, 9") {
  const jn::TailCapacity c7 = jn::tail_capacity(7);
  CHECK(c7.survivors == 7);
  CHECK(c7.alpha == 7);  // the seven survivors are pairwise compatible
  CHECK(c7.total == 185);

  const jn::TailCapacity c8 = jn::tail_capacity(8);
  CHECK(c8.survivors == 0);
  CHECK(c8.total == 179);

  const jn::TailCapacity c9 = jn::tail_capacity(9);
  CHECK(c9.survivors == 0);
  CHECK(c9.total == 180);

  // every tail case stays strictly below the t = 1 value
  for (int t = 7; t <= 9; ++t) CHECK(jn::tail_capacity(t).total < 258);
}

TEST_CASE("the three 258-point sets verify") {
  for (const jn::Variant v : {jn::Variant::X6, jn::Variant::Y6, jn::Variant::Z6}) {
    const jn::Report rep = jn::verify_extremal(v);
    CHECK(rep.size == 258);
    CHECK(rep.four_distance);
    CHECK(rep.maximal);
    CHECK(rep.violations.empty());
    CHECK(rep.distance_set == std::vector<int>{18, 36, 54, 72});
  }
}

TEST_CASE("adding a second pool-(ii) vector breaks the distance set") {
  auto set = jn::assemble_extremal(jn::Variant::X6);
  jn::ScaledVec extra(9, 2);
  extra[1] = -4;  // a pool (ii) vector other than the chosen one
  bool conflict = false;
  for (const auto& m : set) {
    const int d = jn::squared_distance_scaled(extra, m);
    if (d != 18 && d != 36 && d != 54 && d != 72) conflict = true;
  }
  CHECK(conflict);
}

TEST_CASE("the three extremal sets are pairwise non-isomorphic") {
  // distinguished by their pool-(iv) parts, which are X_6, Y_6, Z_6
  const auto fx = canonical_form(X_family(6));
  const auto fy = canonical_form(Y_family(6));
  const auto fz = canonical_form(Z_family(6));
  CHECK(fx != fy);
  CHECK(fx != fz);
  CHECK(fy != fz);
}

}  // TEST_SUITE
