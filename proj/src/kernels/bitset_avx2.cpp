// Built with -mavx2 -mpopcnt on x86-64; only reached after a runtime check.

#include <algorithm>

#include "affnet/kernels/bitset.hpp"

#if defined(__AVX2__)
#include <immintrin.h>
#endif

namespace affnet::kernels::avx2 {

#if defined(__AVX2__)

namespace {

// Nibble lookup popcount (Mula): per-byte counts via vpshufb, folded into
// four 64-bit lanes with vpsadbw.
inline __m256i popcount_bytes(__m256i v) noexcept {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  return _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
}

inline std::uint64_t horizontal_sum(__m256i acc) noexcept {
  return static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 0)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 1)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 2)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(acc, 3));
}

}  // namespace

std::uint64_t popcount(std::span<const std::uint64_t> bits) noexcept {
  const std::size_t n = bits.size();
  const std::uint64_t* p = bits.data();
  const __m256i zero = _mm256_setzero_si256();
  __m256i acc = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(v), zero));
  }
  std::uint64_t total = horizontal_sum(acc);
  for (; i < n; ++i) total += static_cast<std::uint64_t>(_mm_popcnt_u64(p[i]));
  return total;
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept {
  const std::size_t n = std::min(a.size(), b.size());
  const std::uint64_t* pa = a.data();
  const std::uint64_t* pb = b.data();
  const __m256i zero = _mm256_setzero_si256();
  __m256i acc = zero;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pa + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(pb + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount_bytes(_mm256_and_si256(va, vb)), zero));
  }
  std::uint64_t total = horizontal_sum(acc);
  for (; i < n; ++i) total += static_cast<std::uint64_t>(_mm_popcnt_u64(pa[i] & pb[i]));
  return total;
}

#else

std::uint64_t popcount(std::span<const std::uint64_t> bits) noexcept { return scalar::popcount(bits); }

std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept {
  return scalar::and_popcount(a, b);
}

#endif

}  // namespace affnet::kernels::avx2
