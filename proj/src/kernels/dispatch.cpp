#include <atomic>
#include <cstdlib>
#include <string>

#include "affnet/error.hpp"
#include "affnet/kernels/bitset.hpp"

namespace affnet::kernels {

namespace {

struct Table {
  Isa isa;
  std::uint64_t (*popcount)(std::span<const std::uint64_t>) noexcept;
  std::uint64_t (*and_popcount)(std::span<const std::uint64_t>, std::span<const std::uint64_t>) noexcept;
};

constexpr Table kScalar{Isa::Scalar, &scalar::popcount, &scalar::and_popcount};
constexpr Table kAvx2{Isa::Avx2, &avx2::popcount, &avx2::and_popcount};
constexpr Table kNeon{Isa::Neon, &neon::popcount, &neon::and_popcount};

const Table& table_for(Isa isa) noexcept {
  switch (isa) {
    case Isa::Avx2: return kAvx2;
    case Isa::Neon: return kNeon;
    case Isa::Scalar: break;
  }
  return kScalar;
}

const Table* initial_table() noexcept {
  Isa isa = detected_isa();
  if (const char* env = std::getenv("AFFNET_SIMD")) {
    const std::string want(env);
    if (want == "scalar") isa = Isa::Scalar;
    else if (want == "avx2" && isa_supported(Isa::Avx2)) isa = Isa::Avx2;
    else if (want == "neon" && isa_supported(Isa::Neon)) isa = Isa::Neon;
  }
  return &table_for(isa);
}

std::atomic<const Table*>& active() noexcept {
  static std::atomic<const Table*> table{initial_table()};
  return table;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(__i386__)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() noexcept {
  if (isa_supported(Isa::Avx2)) return Isa::Avx2;
  if (isa_supported(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed)->isa; }

void select_isa(Isa isa) {
  if (!isa_supported(isa))
    throw Error(Errc::InvalidArgument, std::string("SIMD variant not supported on this CPU: ") +
                                           std::string(to_string(isa)));
  active().store(&table_for(isa), std::memory_order_relaxed);
}

std::uint64_t popcount(std::span<const std::uint64_t> bits) noexcept {
  return active().load(std::memory_order_relaxed)->popcount(bits);
}

std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept {
  return active().load(std::memory_order_relaxed)->and_popcount(a, b);
}

}  // namespace affnet::kernels
