#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace diamfree {

/// Coordinates are limited by the word width of the sign masks.
inline constexpr int kMaxCoords = 64;

/// Default cap on the number of vectors a single signature may enumerate.
inline constexpr std::uint64_t kDefaultEnumCap = 10'000'000;

/// Thrown when an enumeration would exceed its configured cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Identifies one lattice instance L_mkl: all vectors in R^n (n = m+k+l)
/// with exactly m entries -1, k entries 0 and l entries +1.
struct Signature {
  int m = 0;
  int k = 0;
  int l = 0;

  int n() const { return m + k + l; }
  bool valid() const {
    return m >= 0 && k >= 0 && l >= 0 && n() >= 1 && n() <= kMaxCoords;
  }
  /// L_mkl = -L_lkm, so both share all metric structure.
  Signature reversed() const { return Signature{l, k, m}; }

  /// n! / (m! k! l!). Throws std::overflow_error if it does not fit u64.
  std::uint64_t cardinality() const;

  friend bool operator==(const Signature&, const Signature&) = default;
  friend auto operator<=>(const Signature&, const Signature&) = default;
};

/// One point of some L_mkl, stored as two coordinate bitmasks: bit i of
/// `neg` marks entry -1 at coordinate i, bit i of `pos` marks +1.
/// Coordinate 0 is the leftmost entry of the trit string.
struct TritVector {
  std::uint64_t neg = 0;
  std::uint64_t pos = 0;
  std::uint8_t n = 0;

  int entry(int i) const {
    const std::uint64_t bit = std::uint64_t{1} << i;
    if (neg & bit) return -1;
    if (pos & bit) return 1;
    return 0;
  }
  std::uint64_t nonzero_mask() const { return neg | pos; }

  friend bool operator==(const TritVector&, const TritVector&) = default;
};

/// Lexicographic order on entries with -1 < 0 < +1 (generation order).
bool lex_less(const TritVector& a, const TritVector& b);

/// Exact squared Euclidean distance; an integer in [0, 4n].
/// Throws std::invalid_argument on length mismatch.
int squared_distance(const TritVector& x, const TritVector& y);

/// Signature of a single vector (entry counts).
Signature signature_of(const TritVector& x);

/// All vectors of L_sig in lexicographic order (-1 < 0 < +1), no duplicates.
/// Throws CapacityError if the cardinality exceeds `cap`.
std::vector<TritVector> generate(const Signature& sig,
                                 std::uint64_t cap = kDefaultEnumCap);

/// Maximum pairwise squared distance. Requires at least two points.
int diameter_sq(std::span<const TritVector> points);

/// Squared diameter of the full lattice L_sig, computed by exact
/// optimization over sign-overlap patterns (no enumeration). Requires
/// cardinality >= 2.
int lattice_diameter_sq(const Signature& sig);

/// Per-coordinate value counts over a point set: counts[i] tells how many
/// members have entry -1 / 0 / +1 at coordinate i.
struct ColumnCounts {
  std::vector<int> neg;
  std::vector<int> zero;
  std::vector<int> pos;
};
ColumnCounts column_counts(std::span<const TritVector> points);

/// Text codec: '-' for -1, '0' for 0, '+' for +1, coordinate 0 first.
std::string to_trit_string(const TritVector& x);
TritVector parse_trits(std::string_view s);

/// n over (m, k, l) with overflow checking.
std::uint64_t multinomial(int m, int k, int l);

/// Binomial coefficient with overflow checking.
std::uint64_t binomial(int n, int r);

}  // namespace diamfree
