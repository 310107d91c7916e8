#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diamfree/trits.hpp"

namespace diamfree {

/// A named finite subset of one L_mkl. Members are kept sorted (lex order,
/// -1 < 0 < +1) and duplicate-free; every member must carry the family's
/// signature.
struct Family {
  Signature sig;
  std::string name;
  std::string construction;  // one-line provenance note
  std::vector<TritVector> members;

  std::size_t size() const { return members.size(); }
  bool contains(const TritVector& v) const;
};

/// Sorts, deduplicates and validates membership counts.
Family make_family(Signature sig, std::string name, std::vector<TritVector> members,
                   std::string construction = "");

/// The closed-form series C(k+3,3) + 2. Defined for k >= 0; it equals the
/// exact maximum for L_{1,k,2} once k >= 1, and k = 0 only appears inside
/// the four-distance bound arithmetic.
std::uint64_t frak_M(int k);

/// binom(m+l-1, m-1) * binom(k+m+l, m+l) + binom(m+l-1, m): the size of the
/// recursive construction, a lower bound for M_mkl.
std::uint64_t frak_M_general(int m, int k, int l);

/// The proven exact maximum size of a diameter-avoiding subset, when the
/// signature falls in a solved case (m = l; min+k <= max; {m,l} = {1,2}).
/// Applies the symmetry M_mkl = M_lkm.
struct ExactValue {
  std::uint64_t value;
  std::string source;
};
std::optional<ExactValue> M_exact(const Signature& sig);

/// The structured subsets of L_{1,k,2} (positions below are 1-based, as in
/// the construction's usual presentation):
///   S_k(i): zeros before position i, -1 at i, the two +1 anywhere after;
///   T_k(i): zeros before position i, +1 at i, one -1 and one +1 after;
///   U_k(i): +1 at position 1, -1 at some l in 2..i, the second +1 after l.
/// Valid for 1 <= i <= k+2 (S, T) and 2 <= i <= k+2 (U).
Family S_set(int k, int i);
Family T_set(int k, int i);
Family U_set(int k, int i);

/// The three extremal families of size frak_M(k) in L_{1,k,2}. Each is
/// built both directly and by the prepend-zero recursion; the two routes
/// are checked against each other internally.
Family X_family(int k);  // k >= 1
Family Y_family(int k);  // k >= 1
Family Z_family(int k);  // k >= 2

/// The two exceptional 11-point families in L_{1,2,2}.
Family V2_family();
Family W2_family();

/// Diameter-avoiding family in L_mkl for m < l and k >= l - m, built by
/// seeding the star construction at k = l - m (all vectors whose first
/// coordinate is -1 or 0) and prepending zeros:
///   F_k = {(0,x) : x in F_{k-1}} union {x : x_1 = -1}.
/// Its size is frak_M_general(m, k, l). Throws on unsupported parameters.
Family recursive_family(int m, int k, int l);

/// Extra right-side vectors of the Y- and Z-case matchings:
///   y_case_extra: +1 at positions {1, k},   -1 at one of the last three;
///   z_case_extra: +1 at positions {1, k-1}, -1 at one of the last four.
Family y_case_extra(int k);  // k >= 2, three vectors
Family z_case_extra(int k);  // k >= 3, four vectors

/// Explicit matchings certifying the size bound in each branch of the
/// classification. Left side is always S_k(1); the right side is a U_set
/// (possibly empty) plus the case extras. The X- and Y-case matchings are
/// perfect on the non-isolated vertices; the Z-case matching leaves the
/// two listed left vectors unmatched.
struct CaseMatching {
  int k = 0;
  std::string label;                 // "X", "Y" or "Z"
  std::vector<TritVector> left;
  std::vector<TritVector> right;
  std::vector<std::pair<TritVector, TritVector>> pairs;
  std::vector<TritVector> expected_isolated;   // left vertices with no edge
  std::vector<TritVector> expected_unmatched;  // non-isolated yet unmatched
};
CaseMatching x_case_matching(int k);  // k >= 2
CaseMatching y_case_matching(int k);  // k >= 2
CaseMatching z_case_matching(int k);  // k >= 3

/// Known values/bounds for every signature with n <= max_n.
struct BoundEntry {
  std::uint64_t value = 0;
  bool exact = false;
  std::string source;
};
using BoundTable = std::map<Signature, BoundEntry>;
BoundTable bound_table(int max_n);

/// JSON round trip: {"signature":[m,k,l], "name":..., "members":[...],
/// "construction":...}. Byte-stable because members stay sorted.
std::string family_to_json(const Family& f);
Family family_from_json(const std::string& text);

}  // namespace diamfree
