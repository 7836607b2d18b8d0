#include <algorithm>

#include "affnet/kernels/bitset.hpp"

#if defined(__ARM_NEON) || defined(__aarch64__)
#include <arm_neon.h>
#define AFFNET_HAVE_NEON 1
#endif

namespace affnet::kernels::neon {

#if defined(AFFNET_HAVE_NEON)

namespace {

// vcnt gives per-byte counts; widen pairwise into two 64-bit lanes.
inline uint64x2_t popcount_lanes(uint8x16_t v) noexcept {
  return vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(vcntq_u8(v))));
}

}  // namespace

std::uint64_t popcount(std::span<const std::uint64_t> bits) noexcept {
  const std::size_t n = bits.size();
  const std::uint64_t* p = bits.data();
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) acc = vaddq_u64(acc, popcount_lanes(vreinterpretq_u8_u64(vld1q_u64(p + i))));
  std::uint64_t total = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
  for (; i < n; ++i) total += static_cast<std::uint64_t>(__builtin_popcountll(p[i]));
  return total;
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept {
  const std::size_t n = std::min(a.size(), b.size());
  const std::uint64_t* pa = a.data();
  const std::uint64_t* pb = b.data();
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint64x2_t v = vandq_u64(vld1q_u64(pa + i), vld1q_u64(pb + i));
    acc = vaddq_u64(acc, popcount_lanes(vreinterpretq_u8_u64(v)));
  }
  std::uint64_t total = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
  for (; i < n; ++i) total += static_cast<std::uint64_t>(__builtin_popcountll(pa[i] & pb[i]));
  return total;
}

#else

std::uint64_t popcount(std::span<const std::uint64_t> bits) noexcept { return scalar::popcount(bits); }

std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept {
  return scalar::and_popcount(a, b);
}

#endif

}  // namespace affnet::kernels::neon
