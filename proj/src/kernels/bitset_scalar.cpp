#include <algorithm>
#include <bit>

#include "affnet/kernels/bitset.hpp"

namespace affnet::kernels::scalar {

std::uint64_t popcount(std::span<const std::uint64_t> bits) noexcept {
  std::uint64_t total = 0;
  for (std::uint64_t w : bits) total += static_cast<std::uint64_t>(std::popcount(w));
  return total;
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept {
  const std::size_t n = std::min(a.size(), b.size());
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
  return total;
}

}  // namespace affnet::kernels::scalar
