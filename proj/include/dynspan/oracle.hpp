#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dynspan/graph.hpp"

namespace dynspan {

struct StretchReport {
  bool ok = true;
  /// Edge attaining worst_dist; set whenever at least one edge was checked.
  std::optional<EdgeKey> worst_edge;
  /// Largest dist_H(u, v) over checked edges; kUnreachable if H disconnects one.
  std::uint32_t worst_dist = 0;
  std::size_t checked = 0;
};

struct CheckMode {
  enum class Kind { Exact, Sampled };
  Kind kind = Kind::Exact;
  std::size_t count = 0;
  std::uint64_t seed = 0;

  static CheckMode exact() { return {}; }
  static CheckMode sampled(std::size_t count, std::uint64_t seed) {
    return {Kind::Sampled, count, seed};
  }
};

/// Checks dist_H(u, v) <= t for every edge (u, v) of g (or a seeded sample).
/// Checking edges only is equivalent to checking all pairs for unweighted
/// graphs. Throws SpannerNotSubgraph if some edge of h is not in g.
StretchReport verify_stretch(const DynamicGraph& g, std::span<const EdgeKey> h, std::uint32_t t,
                             CheckMode mode = CheckMode::exact());

inline bool verify_size(std::span<const EdgeKey> h, std::size_t bound) { return h.size() <= bound; }

/// True iff every cycle of (V, h) has length >= g_min. BFS from every vertex,
/// truncated at the depth where a shorter cycle would have closed.
bool girth_at_least(std::size_t n, std::span<const EdgeKey> h, std::uint32_t g_min);

/// Length of the shortest cycle of (V, h), or nullopt for a forest.
std::optional<std::uint32_t> shortest_cycle(std::size_t n, std::span<const EdgeKey> h);

/// Static greedy: inspect `order` and keep (u, v) iff dist_H(u, v) >= 2k at
/// inspection time. Result is in acceptance order. Throws OrderNotPermutation.
std::vector<EdgeKey> reference_greedy(const DynamicGraph& g, unsigned k,
                                      std::span<const EdgeKey> order);

/// Closed balls of radius 0..max_radius around every vertex, as bit rows.
class BallTable {
 public:
  BallTable(const DynamicGraph& h, std::uint32_t max_radius);

  std::size_t words() const noexcept { return words_; }
  std::span<const std::uint64_t> ball(std::uint32_t radius, VertexId v) const noexcept {
    return {levels_[radius].data() + static_cast<std::size_t>(v) * words_, words_};
  }
  /// True iff dist_H(u, v) <= d, for d <= 2 * max_radius.
  bool within(VertexId u, VertexId v, std::uint32_t d) const noexcept;

 private:
  std::size_t words_ = 0;
  std::vector<std::vector<std::uint64_t>> levels_;
};

}  // namespace dynspan
