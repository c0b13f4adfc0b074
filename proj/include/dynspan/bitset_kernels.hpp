#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

// Word-parallel kernels behind the stretch oracle's ball tables. Each kernel
// has a scalar reference and an AVX2 variant; the variant is picked once at
// startup from CPUID and can be pinned for equivalence testing.
namespace dynspan::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

/// Best ISA supported by this CPU and build.
Isa detected_isa() noexcept;
/// ISA currently used by the dispatching entry points.
Isa active_isa() noexcept;
/// Pins the dispatch; returns false (and leaves it unchanged) if unsupported.
bool force_isa(Isa isa) noexcept;

/// dst |= src over min(dst.size(), src.size()) words.
void or_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) noexcept;
/// True iff a & b has any bit set.
bool intersects(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept;

namespace scalar {
void or_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) noexcept;
bool intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) noexcept;
}  // namespace scalar

namespace avx2 {
bool available() noexcept;
void or_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) noexcept;
bool intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) noexcept;
}  // namespace avx2

}  // namespace dynspan::kernels
