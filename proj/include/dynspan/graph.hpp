#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/container/flat_set.hpp>

namespace dynspan {

using VertexId = std::uint32_t;

inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// Undirected edge in canonical form (lo < hi).
struct EdgeKey {
  VertexId lo = 0;
  VertexId hi = 0;

  /// Canonicalizes (a, b); throws SelfLoop when a == b.
  static EdgeKey of(VertexId a, VertexId b);

  VertexId other(VertexId v) const noexcept { return v == lo ? hi : lo; }

  friend constexpr auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
};

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& e) const noexcept {
    std::uint64_t x = (static_cast<std::uint64_t>(e.lo) << 32) | e.hi;
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    return static_cast<std::size_t>(x);
  }
};

enum class UpdateKind : std::uint8_t { Insert, Delete };

struct UpdateEvent {
  std::uint64_t seq = 0;
  UpdateKind kind = UpdateKind::Insert;
  EdgeKey edge;

  friend bool operator==(const UpdateEvent&, const UpdateEvent&) = default;
};

using NeighborSet = boost::container::flat_set<VertexId>;

/// Simple undirected graph over the fixed vertex set [0, n).
class DynamicGraph {
 public:
  DynamicGraph() = default;
  explicit DynamicGraph(std::size_t n);
  /// Throws DuplicateEdge, SelfLoop or VertexOutOfRange.
  DynamicGraph(std::size_t n, std::span<const EdgeKey> edges);

  std::size_t vertex_count() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return m_; }
  bool empty() const noexcept { return m_ == 0; }
  bool complete() const noexcept;

  bool has_edge(EdgeKey e) const;
  bool contains(VertexId v) const noexcept { return v < adj_.size(); }
  const NeighborSet& neighbors(VertexId v) const { return adj_.at(v); }
  std::size_t degree(VertexId v) const { return adj_.at(v).size(); }
  std::size_t max_degree() const noexcept;

  /// Throws EdgeExists.
  void insert_edge(EdgeKey e);
  /// Throws EdgeMissing.
  void delete_edge(EdgeKey e);
  void apply(const UpdateEvent& ev);

  /// All edges in ascending EdgeKey order.
  std::vector<EdgeKey> edges() const;

  /// "N <n>" followed by "<lo> <hi>" per edge, ascending.
  std::string serialize() const;

  /// Symmetry, no self loops, m = sum(deg) / 2.
  bool check_invariants() const;

  void check_vertex(VertexId v) const;

 private:
  std::vector<NeighborSet> adj_;
  std::size_t m_ = 0;
};

/// Hop distance from u to v if it is at most cap, otherwise nullopt.
std::optional<std::uint32_t> bfs_dist(const DynamicGraph& g, VertexId u, VertexId v,
                                      std::uint32_t cap);

/// Reusable scratch space for repeated bounded searches on one graph size.
/// `within` runs a bidirectional search that expands the smaller frontier.
class DistanceProbe {
 public:
  explicit DistanceProbe(std::size_t n = 0);

  /// True iff dist_g(u, v) <= cap.
  bool within(const DynamicGraph& g, VertexId u, VertexId v, std::uint32_t cap);

 private:
  void reset(std::size_t n);
  void next_epoch();

  std::vector<std::uint32_t> mark_[2];
  std::vector<VertexId> front_[2];
  std::vector<VertexId> next_;
  std::uint32_t epoch_ = 0;
};

}  // namespace dynspan
