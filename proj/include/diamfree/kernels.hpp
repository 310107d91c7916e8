#pragma once

#include <cstddef>
#include <cstdint>

namespace diamfree::kernels {

// Data-parallel inner loops shared by the graph builder and the solver.
// Each operation has a scalar reference implementation and, on x86-64,
// an AVX2 variant selected once at runtime. The two are equivalence-tested
// bit for bit; everything downstream is agnostic to the active variant.
struct Ops {
  const char* name;

  // Total popcount of nwords words.
  std::uint64_t (*popcount_words)(const std::uint64_t* w, std::size_t nwords);

  // out[r] = popcount(rows[r*stride .. +stride] & mask), r = 0..nrows-1.
  void (*popcount_and_batch)(const std::uint64_t* rows, std::size_t stride,
                             std::size_t nrows, const std::uint64_t* mask,
                             std::uint32_t* out);

  // Squared trit distances of one query point against a block of points
  // given as parallel sign-mask arrays:
  //   out[i] = 4*popcount(qneg & pos[i] | qpos & neg[i] terms) + zero-mismatch
  // i.e. the exact integer distance used everywhere in this library.
  void (*trit_distance_batch)(std::uint64_t qneg, std::uint64_t qpos,
                              const std::uint64_t* neg, const std::uint64_t* pos,
                              std::size_t count, std::uint16_t* out);
};

const Ops& scalar_ops();

// Null when the binary was built without AVX2 support or the CPU lacks it.
const Ops* avx2_ops();

bool avx2_supported();

// Runtime-selected table. Honors DIAMFREE_NO_AVX2=1 in the environment.
const Ops& active_ops();

// Test hook: force the scalar path for the remainder of the process.
void force_scalar(bool on);

}  // namespace diamfree::kernels
