#include <random>

#include "diamfree/kernels.hpp"
#include "doctest.h"

using namespace diamfree;

namespace {

std::vector<std::uint64_t> random_words(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::uint64_t> w(n);
  for (auto& x : w) x = rng();
  return w;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar and avx2 variants agree bit for bit") {
  const kernels::Ops& scalar = kernels::scalar_ops();
  const kernels::Ops* avx2 = kernels::avx2_ops();
  if (!avx2) {
    MESSAGE("AVX2 unavailable on this machine; scalar-only run");
    return;
  }
  std::mt19937_64 rng(20240811);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t stride = 1 + static_cast<std::size_t>(rng() % 9);
    const std::size_t nrows = 1 + static_cast<std::size_t>(rng() % 300);
    const auto rows = random_words(stride * nrows, rng);
    const auto mask = random_words(stride, rng);

    CHECK(scalar.popcount_words(rows.data(), rows.size()) ==
          avx2->popcount_words(rows.data(), rows.size()));

    std::vector<std::uint32_t> out_s(nrows), out_v(nrows);
    scalar.popcount_and_batch(rows.data(), stride, nrows, mask.data(), out_s.data());
    avx2->popcount_and_batch(rows.data(), stride, nrows, mask.data(), out_v.data());
    CHECK(out_s == out_v);
  }
}

TEST_CASE("trit distance batch matches across variants and against the scalar formula") {
  const kernels::Ops& scalar = kernels::scalar_ops();
  const kernels::Ops* avx2 = kernels::avx2_ops();
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 64);
    const std::uint64_t lanes = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    const std::size_t count = 1 + static_cast<std::size_t>(rng() % 257);
    std::vector<std::uint64_t> neg(count), pos(count);
    for (std::size_t i = 0; i < count; ++i) {
      neg[i] = rng() & lanes;
      pos[i] = rng() & lanes & ~neg[i];
    }
    const std::uint64_t qneg = rng() & lanes;
    const std::uint64_t qpos = rng() & lanes & ~qneg;

    std::vector<std::uint16_t> out_s(count);
    scalar.trit_distance_batch(qneg, qpos, neg.data(), pos.data(), count, out_s.data());
    for (std::size_t i = 0; i < count; ++i) {
      const int opp = std::popcount(qneg & pos[i]) + std::popcount(qpos & neg[i]);
      const int zm = std::popcount((qneg | qpos) ^ (neg[i] | pos[i]));
      CHECK(out_s[i] == 4 * opp + zm);
    }
    if (avx2) {
      std::vector<std::uint16_t> out_v(count);
      avx2->trit_distance_batch(qneg, qpos, neg.data(), pos.data(), count, out_v.data());
      CHECK(out_s == out_v);
    }
  }
}

TEST_CASE("runtime dispatch honors the scalar override") {
  kernels::force_scalar(true);
  CHECK(std::string(kernels::active_ops().name) == "scalar");
  kernels::force_scalar(false);
  if (kernels::avx2_supported())
    CHECK(std::string(kernels::active_ops().name) == "avx2");
}

}  // TEST_SUITE
