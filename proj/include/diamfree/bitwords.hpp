#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace diamfree::bits {

// Thin helpers over raw u64 word blocks. Vertex sets in the solver and the
// adjacency rows of graphs are stored this way; the batch-level operations
// on them go through kernels::active_ops().

inline std::size_t words_for(std::size_t nbits) { return (nbits + 63) / 64; }

inline void set_bit(std::uint64_t* w, std::size_t i) {
  w[i >> 6] |= std::uint64_t{1} << (i & 63);
}
inline void clear_bit(std::uint64_t* w, std::size_t i) {
  w[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
}
inline bool test_bit(const std::uint64_t* w, std::size_t i) {
  return (w[i >> 6] >> (i & 63)) & 1;
}

inline std::size_t popcount(const std::uint64_t* w, std::size_t nwords) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < nwords; ++i) total += std::popcount(w[i]);
  return total;
}

/// Index of the lowest set bit, or npos when empty.
inline constexpr std::size_t npos = static_cast<std::size_t>(-1);
inline std::size_t find_first(const std::uint64_t* w, std::size_t nwords) {
  for (std::size_t i = 0; i < nwords; ++i)
    if (w[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(w[i]));
  return npos;
}

template <typename Fn>
inline void for_each_bit(const std::uint64_t* w, std::size_t nwords, Fn&& fn) {
  for (std::size_t i = 0; i < nwords; ++i) {
    std::uint64_t word = w[i];
    while (word) {
      const int b = std::countr_zero(word);
      fn(i * 64 + static_cast<std::size_t>(b));
      word &= word - 1;
    }
  }
}

}  // namespace diamfree::bits
