#include "diamfree/trits.hpp"

#include <algorithm>
#include <bit>

namespace diamfree {

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t result = 1;
  for (int i = 1; i <= r; ++i) {
    // result * (n - r + i) / i is always integral at this step.
    const std::uint64_t num = static_cast<std::uint64_t>(n - r + i);
    if (result > UINT64_MAX / num) throw std::overflow_error("binomial overflow");
    result = result * num / static_cast<std::uint64_t>(i);
  }
  return result;
}

std::uint64_t multinomial(int m, int k, int l) {
  const std::uint64_t a = binomial(m + k + l, m);
  const std::uint64_t b = binomial(k + l, k);
  if (b != 0 && a > UINT64_MAX / b) throw std::overflow_error("multinomial overflow");
  return a * b;
}

std::uint64_t Signature::cardinality() const {
  if (!valid()) throw std::invalid_argument("invalid signature");
  return multinomial(m, k, l);
}

bool lex_less(const TritVector& a, const TritVector& b) {
  const int n = std::min<int>(a.n, b.n);
  for (int i = 0; i < n; ++i) {
    const int ea = a.entry(i), eb = b.entry(i);
    if (ea != eb) return ea < eb;
  }
  return a.n < b.n;
}

int squared_distance(const TritVector& x, const TritVector& y) {
  if (x.n != y.n) throw std::invalid_argument("squared_distance: length mismatch");
  // Opposite signs contribute 4, a single zero contributes 1.
  const int opposite = std::popcount(x.neg & y.pos) + std::popcount(x.pos & y.neg);
  const int single_zero = std::popcount(x.nonzero_mask() ^ y.nonzero_mask());
  return 4 * opposite + single_zero;
}

Signature signature_of(const TritVector& x) {
  const int m = std::popcount(x.neg);
  const int l = std::popcount(x.pos);
  return Signature{m, x.n - m - l, l};
}

std::vector<TritVector> generate(const Signature& sig, std::uint64_t cap) {
  if (!sig.valid()) throw std::invalid_argument("generate: invalid signature");
  const std::uint64_t count = sig.cardinality();
  if (count > cap) {
    throw CapacityError("generate: |L_" + std::to_string(sig.m) + "," +
                        std::to_string(sig.k) + "," + std::to_string(sig.l) +
                        "| = " + std::to_string(count) + " exceeds cap " +
                        std::to_string(cap));
  }
  const int n = sig.n();
  std::vector<signed char> entries(static_cast<std::size_t>(n));
  std::fill_n(entries.begin(), sig.m, static_cast<signed char>(-1));
  std::fill_n(entries.begin() + sig.m, sig.k, static_cast<signed char>(0));
  std::fill_n(entries.begin() + sig.m + sig.k, sig.l, static_cast<signed char>(1));

  std::vector<TritVector> out;
  out.reserve(count);
  do {
    TritVector v;
    v.n = static_cast<std::uint8_t>(n);
    for (int i = 0; i < n; ++i) {
      if (entries[i] < 0) v.neg |= std::uint64_t{1} << i;
      else if (entries[i] > 0) v.pos |= std::uint64_t{1} << i;
    }
    out.push_back(v);
  } while (std::next_permutation(entries.begin(), entries.end()));
  return out;
}

int diameter_sq(std::span<const TritVector> points) {
  if (points.size() < 2) throw std::invalid_argument("diameter_sq: need at least 2 points");
  int best = 0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      best = std::max(best, squared_distance(points[i], points[j]));
  return best;
}

int lattice_diameter_sq(const Signature& sig) {
  if (!sig.valid() || sig.cardinality() < 2)
    throw std::invalid_argument("lattice_diameter_sq: need at least 2 points");
  const int m = sig.m, k = sig.k, l = sig.l;
  // A pair of lattice points is described by the overlap counts
  //   a = |neg(x) & neg(y)|,  b = |pos(x) & pos(y)|,
  //   c = |neg(x) & pos(y)|,  d = |pos(x) & neg(y)|;
  // the dot product is a + b - c - d and the leftovers must fit on zeros.
  int min_dot = INT32_MAX;
  for (int a = 0; a <= m; ++a)
    for (int b = 0; b <= l; ++b)
      for (int c = 0; c + a <= m && c + b <= l; ++c)
        for (int d = 0; d + a <= m && d + b <= l && d + c <= m + l; ++d) {
          if (m + l - (a + b + c + d) > k) continue;  // zeros cannot absorb the rest
          min_dot = std::min(min_dot, a + b - c - d);
        }
  return 2 * (m + l) - 2 * min_dot;
}

ColumnCounts column_counts(std::span<const TritVector> points) {
  if (points.empty()) throw std::invalid_argument("column_counts: empty point set");
  const int n = points.front().n;
  ColumnCounts c;
  c.neg.assign(n, 0);
  c.zero.assign(n, 0);
  c.pos.assign(n, 0);
  for (const TritVector& v : points) {
    if (v.n != points.front().n)
      throw std::invalid_argument("column_counts: mixed lengths");
    for (int i = 0; i < n; ++i) {
      const int e = v.entry(i);
      if (e < 0) ++c.neg[i];
      else if (e > 0) ++c.pos[i];
      else ++c.zero[i];
    }
  }
  return c;
}

std::string to_trit_string(const TritVector& x) {
  std::string s(x.n, '0');
  for (int i = 0; i < x.n; ++i) {
    const int e = x.entry(i);
    if (e < 0) s[i] = '-';
    else if (e > 0) s[i] = '+';
  }
  return s;
}

TritVector parse_trits(std::string_view s) {
  if (s.empty() || s.size() > kMaxCoords)
    throw std::invalid_argument("parse_trits: bad length");
  TritVector v;
  v.n = static_cast<std::uint8_t>(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    switch (s[i]) {
      case '-': v.neg |= std::uint64_t{1} << i; break;
      case '+': v.pos |= std::uint64_t{1} << i; break;
      case '0': break;
      default:
        throw std::invalid_argument("parse_trits: bad character '" +
                                    std::string(1, s[i]) + "'");
    }
  }
  return v;
}

}  // namespace diamfree
