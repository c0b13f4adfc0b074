#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dynspan/graph.hpp"

namespace dynspan {

/// ceil(sqrt(n)) in integer arithmetic.
std::uint32_t ceil_sqrt(std::uint64_t n) noexcept;
/// ceil(log2(n)), 0 for n <= 1.
std::uint32_t ceil_log2(std::uint64_t n) noexcept;
/// floor(log2(n)) for n >= 1.
std::uint32_t floor_log2(std::uint64_t n) noexcept;

/// B = ceil(sqrt(n)) buckets filled round-robin: b(v) = v mod B.
class BucketPartition {
 public:
  BucketPartition() = default;
  explicit BucketPartition(std::size_t n);

  std::uint32_t count() const noexcept { return count_; }
  std::uint32_t of(VertexId v) const noexcept { return v % count_; }
  bool same(VertexId a, VertexId b) const noexcept { return of(a) == of(b); }
  const std::vector<VertexId>& members(std::uint32_t i) const { return members_.at(i); }

 private:
  std::uint32_t count_ = 1;
  std::vector<std::vector<VertexId>> members_;
};

}  // namespace dynspan
