#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "diamfree/families.hpp"

namespace diamfree {

/// Permutation-invariant certificate: the lexicographically least byte
/// encoding (rows sorted ascending, newline-joined trit strings) over all
/// column permutations of the member matrix, together with one minimizing
/// permutation. Two families over the same signature have equal forms iff
/// one is a coordinate permutation of the other.
struct CanonicalForm {
  std::string bytes;
  std::vector<int> perm;  // perm[t] = source column placed at target t

  friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
    return a.bytes == b.bytes;
  }
  friend auto operator<=>(const CanonicalForm& a, const CanonicalForm& b) {
    return a.bytes <=> b.bytes;
  }
};

struct CanonOptions {
  /// The search always returns the exact minimum; with pruning off it
  /// degenerates to brute force over all n! permutations (test oracle).
  bool use_pruning = true;
};

/// Exact canonical form. The search is prefix-bounded DFS over column
/// assignments with identical-column deduplication. Requires n <= 16.
CanonicalForm canonical_form(const Family& f, const CanonOptions& opts = {});

/// new_row[t] = old_row[perm[t]] applied to every member.
Family permute_family(const Family& f, std::span<const int> perm);

struct IsoResult {
  bool isomorphic = false;
  std::optional<std::vector<int>> witness;  // permute_family(F, witness) == G
};

/// Canonical-form equality plus a verified witnessing permutation.
/// Throws std::invalid_argument on a signature mismatch.
IsoResult are_isomorphic(const Family& f, const Family& g);

/// Partition into isomorphism classes keyed by canonical form.
struct FamilyClass {
  CanonicalForm form;
  std::vector<std::size_t> members;  // indices into the input span
  std::size_t representative = 0;    // member with the least own encoding
};
struct Classification {
  std::vector<FamilyClass> classes;  // ordered by canonical form
};
Classification classify(std::span<const Family> families);

/// Number of column permutations fixing the family setwise; the orbit under
/// S_n has length n! / stabilizer_order. Requires n <= 12.
std::uint64_t stabilizer_order(const Family& f);

/// Cycle notation of the map sending source column i to its target
/// position, 1-based, fixed points omitted; identity prints "()".
std::string cycle_notation(std::span<const int> perm);

}  // namespace diamfree
