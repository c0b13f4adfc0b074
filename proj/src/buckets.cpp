#include "dynspan/buckets.hpp"

#include <algorithm>
#include <bit>

namespace dynspan {

std::uint32_t ceil_sqrt(std::uint64_t n) noexcept {
  std::uint64_t r = 0;
  while (r * r < n) ++r;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t ceil_log2(std::uint64_t n) noexcept {
  return n <= 1 ? 0 : static_cast<std::uint32_t>(std::bit_width(n - 1));
}

std::uint32_t floor_log2(std::uint64_t n) noexcept {
  return n == 0 ? 0 : static_cast<std::uint32_t>(std::bit_width(n) - 1);
}

BucketPartition::BucketPartition(std::size_t n)
    : count_(std::max<std::uint32_t>(ceil_sqrt(n), 1)), members_(count_) {
  for (VertexId v = 0; v < n; ++v) members_[of(v)].push_back(v);
}

}  // namespace dynspan
