#include "diamfree/kernels.hpp"

#if (defined(__x86_64__) || defined(_M_X64)) && !defined(DIAMFREE_DISABLE_AVX2)

#include <immintrin.h>

namespace diamfree::kernels {
namespace {

#define DF_AVX2 __attribute__((target("avx2,popcnt")))

// Per-64-bit-lane popcount of a 256-bit vector: pshufb nibble LUT followed
// by a zero SAD to sum the byte counts within each lane.
DF_AVX2 inline __m256i popcnt_per_u64(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
  const __m256i cnt =
      _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

DF_AVX2 inline std::uint64_t hsum_u64(__m256i v) {
  const __m128i lo = _mm256_castsi256_si128(v);
  const __m128i hi = _mm256_extracti128_si256(v, 1);
  const __m128i s = _mm_add_epi64(lo, hi);
  return static_cast<std::uint64_t>(_mm_extract_epi64(s, 0)) +
         static_cast<std::uint64_t>(_mm_extract_epi64(s, 1));
}

DF_AVX2 std::uint64_t popcount_words_avx2(const std::uint64_t* w, std::size_t nwords) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(w + i));
    acc = _mm256_add_epi64(acc, popcnt_per_u64(v));
  }
  std::uint64_t total = hsum_u64(acc);
  for (; i < nwords; ++i) total += static_cast<std::uint64_t>(_mm_popcnt_u64(w[i]));
  return total;
}

DF_AVX2 void popcount_and_batch_avx2(const std::uint64_t* rows, std::size_t stride,
                                     std::size_t nrows, const std::uint64_t* mask,
                                     std::uint32_t* out) {
  for (std::size_t r = 0; r < nrows; ++r) {
    const std::uint64_t* row = rows + r * stride;
    __m256i acc = _mm256_setzero_si256();
    std::size_t w = 0;
    for (; w + 4 <= stride; w += 4) {
      const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + w));
      const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mask + w));
      acc = _mm256_add_epi64(acc, popcnt_per_u64(_mm256_and_si256(a, b)));
    }
    std::uint64_t total = hsum_u64(acc);
    for (; w < stride; ++w)
      total += static_cast<std::uint64_t>(_mm_popcnt_u64(row[w] & mask[w]));
    out[r] = static_cast<std::uint32_t>(total);
  }
}

// Four points per iteration; each 64-bit lane carries one point's masks.
DF_AVX2 void trit_distance_batch_avx2(std::uint64_t qneg, std::uint64_t qpos,
                                      const std::uint64_t* neg, const std::uint64_t* pos,
                                      std::size_t count, std::uint16_t* out) {
  const __m256i vqneg = _mm256_set1_epi64x(static_cast<long long>(qneg));
  const __m256i vqpos = _mm256_set1_epi64x(static_cast<long long>(qpos));
  const __m256i vqnz = _mm256_set1_epi64x(static_cast<long long>(qneg | qpos));
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256i vneg = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(neg + i));
    const __m256i vpos = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pos + i));
    const __m256i opp = _mm256_add_epi64(popcnt_per_u64(_mm256_and_si256(vqneg, vpos)),
                                         popcnt_per_u64(_mm256_and_si256(vqpos, vneg)));
    const __m256i zero_mism =
        popcnt_per_u64(_mm256_xor_si256(vqnz, _mm256_or_si256(vneg, vpos)));
    const __m256i dist = _mm256_add_epi64(_mm256_slli_epi64(opp, 2), zero_mism);
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), dist);
    out[i + 0] = static_cast<std::uint16_t>(lanes[0]);
    out[i + 1] = static_cast<std::uint16_t>(lanes[1]);
    out[i + 2] = static_cast<std::uint16_t>(lanes[2]);
    out[i + 3] = static_cast<std::uint16_t>(lanes[3]);
  }
  const std::uint64_t qnz = qneg | qpos;
  for (; i < count; ++i) {
    const int opp = static_cast<int>(_mm_popcnt_u64(qneg & pos[i])) +
                    static_cast<int>(_mm_popcnt_u64(qpos & neg[i]));
    const int zm = static_cast<int>(_mm_popcnt_u64(qnz ^ (neg[i] | pos[i])));
    out[i] = static_cast<std::uint16_t>(4 * opp + zm);
  }
}

#undef DF_AVX2

}  // namespace

const Ops* avx2_ops() {
  if (!avx2_supported()) return nullptr;
  static const Ops ops{"avx2", popcount_words_avx2, popcount_and_batch_avx2,
                       trit_distance_batch_avx2};
  return &ops;
}

bool avx2_supported() {
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

}  // namespace diamfree::kernels

#else  // non-x86 fallback

namespace diamfree::kernels {

const Ops* avx2_ops() { return nullptr; }
bool avx2_supported() { return false; }

}  // namespace diamfree::kernels

#endif
