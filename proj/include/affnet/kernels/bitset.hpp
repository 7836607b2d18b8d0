#pragma once

// Bit-vector kernels behind the activity and slice-closeness metrics.
//
// Each slice's activity indicator is an N-bit vector packed into 64-bit
// words; slice-pair closeness is popcount(a & b) / N. The scalar variants are
// the reference; SIMD variants must return identical counts and are chosen
// at runtime from the CPU's features. Setting AFFNET_SIMD=scalar|avx2|neon in
// the environment overrides the choice at startup.

#include <cstdint>
#include <span>
#include <string_view>

namespace affnet::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa) noexcept;

bool isa_supported(Isa isa) noexcept;
/// Best variant this CPU supports.
Isa detected_isa() noexcept;
/// Variant currently used by the dispatching entry points.
Isa active_isa() noexcept;
/// Throws affnet::Error(InvalidArgument) when `isa` is unsupported here.
void select_isa(Isa isa);

std::uint64_t popcount(std::span<const std::uint64_t> bits) noexcept;
/// popcount(a & b) over min(|a|, |b|) words.
std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept;

namespace scalar {
std::uint64_t popcount(std::span<const std::uint64_t> bits) noexcept;
std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept;
}  // namespace scalar

// Only callable when isa_supported(Isa::Avx2).
namespace avx2 {
std::uint64_t popcount(std::span<const std::uint64_t> bits) noexcept;
std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept;
}  // namespace avx2

// Only callable when isa_supported(Isa::Neon).
namespace neon {
std::uint64_t popcount(std::span<const std::uint64_t> bits) noexcept;
std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept;
}  // namespace neon

}  // namespace affnet::kernels
