#include "dynspan/bitset_kernels.hpp"

#include <algorithm>
#include <atomic>

namespace dynspan::kernels {

namespace scalar {

void or_into(std::uint64_t* dst, const std::uint64_t* src, std::size_t words) noexcept {
  for (std::size_t i = 0; i < words; ++i) dst[i] |= src[i];
}

bool intersects(const std::uint64_t* a, const std::uint64_t* b, std::size_t words) noexcept {
  for (std::size_t i = 0; i < words; ++i) {
    if ((a[i] & b[i]) != 0) return true;
  }
  return false;
}

}  // namespace scalar

namespace {

struct Table {
  void (*or_into)(std::uint64_t*, const std::uint64_t*, std::size_t) noexcept;
  bool (*intersects)(const std::uint64_t*, const std::uint64_t*, std::size_t) noexcept;
  Isa isa;
};

constexpr Table kScalar{&scalar::or_into, &scalar::intersects, Isa::Scalar};
constexpr Table kAvx2{&avx2::or_into, &avx2::intersects, Isa::Avx2};

const Table* pick() noexcept { return avx2::available() ? &kAvx2 : &kScalar; }

std::atomic<const Table*>& active() noexcept {
  static std::atomic<const Table*> table{pick()};
  return table;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa detected_isa() noexcept { return pick()->isa; }

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed)->isa; }

bool force_isa(Isa isa) noexcept {
  if (isa == Isa::Avx2 && !avx2::available()) return false;
  active().store(isa == Isa::Avx2 ? &kAvx2 : &kScalar, std::memory_order_relaxed);
  return true;
}

void or_into(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src) noexcept {
  active().load(std::memory_order_relaxed)
      ->or_into(dst.data(), src.data(), std::min(dst.size(), src.size()));
}

bool intersects(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept {
  return active().load(std::memory_order_relaxed)
      ->intersects(a.data(), b.data(), std::min(a.size(), b.size()));
}

}  // namespace dynspan::kernels
