#include <bit>

#include "diamfree/kernels.hpp"

namespace diamfree::kernels {
namespace {

std::uint64_t popcount_words_scalar(const std::uint64_t* w, std::size_t nwords) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < nwords; ++i) total += std::popcount(w[i]);
  return total;
}

void popcount_and_batch_scalar(const std::uint64_t* rows, std::size_t stride,
                               std::size_t nrows, const std::uint64_t* mask,
                               std::uint32_t* out) {
  for (std::size_t r = 0; r < nrows; ++r) {
    const std::uint64_t* row = rows + r * stride;
    std::uint32_t acc = 0;
    for (std::size_t w = 0; w < stride; ++w)
      acc += static_cast<std::uint32_t>(std::popcount(row[w] & mask[w]));
    out[r] = acc;
  }
}

void trit_distance_batch_scalar(std::uint64_t qneg, std::uint64_t qpos,
                                const std::uint64_t* neg, const std::uint64_t* pos,
                                std::size_t count, std::uint16_t* out) {
  const std::uint64_t qnz = qneg | qpos;
  for (std::size_t i = 0; i < count; ++i) {
    const int opposite = std::popcount(qneg & pos[i]) + std::popcount(qpos & neg[i]);
    const int single_zero = std::popcount(qnz ^ (neg[i] | pos[i]));
    out[i] = static_cast<std::uint16_t>(4 * opposite + single_zero);
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{"scalar", popcount_words_scalar, popcount_and_batch_scalar,
                       trit_distance_batch_scalar};
  return ops;
}

}  // namespace diamfree::kernels
