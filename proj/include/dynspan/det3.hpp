#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "dynspan/buckets.hpp"
#include "dynspan/graph.hpp"
#include "dynspan/instrumentation.hpp"

namespace dynspan {

/// Role tags an edge can hold in the deterministic 3-spanner.
namespace role {
inline constexpr std::uint8_t kPartnerLo = 1;   // lo's partner edge into hi's bucket
inline constexpr std::uint8_t kPartnerHi = 2;   // hi's partner edge into lo's bucket
inline constexpr std::uint8_t kClusterLo = 4;   // chosen edge from lo into a cluster
inline constexpr std::uint8_t kClusterHi = 8;   // chosen edge from hi into a cluster
}  // namespace role

/// Deterministic fully dynamic 3-spanner with worst-case update cost.
///
/// Every vertex v picks a partner c_i(v) among its neighbors in each bucket i
/// (type-1 edges). For u, u' in one bucket, one edge from u into the cluster
/// C+(u') = {u'} + {v outside the bucket : c_i(v) = u'} is chosen (type-2).
class Det3Spanner {
 public:
  struct Changes {
    std::vector<EdgeKey> added;
    std::vector<EdgeKey> removed;
    std::size_t size() const noexcept { return added.size() + removed.size(); }
  };

  /// Static construction with minimum-id choices.
  explicit Det3Spanner(DynamicGraph g, OpCounter* ops = nullptr);

  /// Throws EdgeExists.
  Changes insert(EdgeKey e);
  /// Throws EdgeMissing.
  Changes erase(EdgeKey e);

  const DynamicGraph& graph() const noexcept { return graph_; }
  const BucketPartition& buckets() const noexcept { return buckets_; }
  std::vector<EdgeKey> spanner() const { return {spanner_.begin(), spanner_.end()}; }
  const std::set<EdgeKey>& spanner_set() const noexcept { return spanner_; }
  std::size_t spanner_size() const noexcept { return spanner_.size(); }
  bool in_spanner(EdgeKey e) const { return spanner_.contains(e); }
  std::uint8_t roles(EdgeKey e) const;
  /// c_i(v), or kNoVertex.
  VertexId center(VertexId v, std::uint32_t i) const { return center_[slot(v, i)]; }
  /// Chosen far endpoint of E(u, C+(t)), or kNoVertex.
  VertexId chosen(VertexId u, VertexId t) const;
  const Changes& last_changes() const noexcept { return last_; }

  /// Recomputes every index from the graph and the current centers and
  /// compares. Returns the first mismatch.
  std::optional<std::string> check_index() const;
  /// True iff every choice is the minimum of its set (holds right after build).
  bool choices_are_minimal() const;

  /// Skip the next type-1 repair's role tag (test hook for the verifier).
  void inject_fault() noexcept { fault_armed_ = true; }

 private:
  struct PairSet {
    std::set<VertexId> members;
    VertexId chosen = kNoVertex;
  };

  std::size_t slot(VertexId v, std::uint32_t i) const noexcept {
    return static_cast<std::size_t>(v) * buckets_.count() + i;
  }
  static std::uint64_t pair_key(VertexId u, VertexId t) noexcept {
    return (static_cast<std::uint64_t>(u) << 32) | t;
  }
  VertexId target(VertexId a, VertexId x) const;
  std::uint8_t partner_bit(VertexId side, EdgeKey e) const noexcept {
    return side == e.lo ? role::kPartnerLo : role::kPartnerHi;
  }
  std::uint8_t cluster_bit(VertexId side, EdgeKey e) const noexcept {
    return side == e.lo ? role::kClusterLo : role::kClusterHi;
  }

  void set_role(EdgeKey e, std::uint8_t bit, bool on);
  void pair_insert(VertexId u, VertexId t, VertexId x);
  void pair_erase(VertexId u, VertexId t, VertexId x);
  void change_center(VertexId x, std::uint32_t i, VertexId next);
  void begin_update();
  Changes finish_update();
  void charge(std::uint64_t n = 1) noexcept {
    if (ops_) ops_->charge(Module::Det3, n);
  }

  DynamicGraph graph_;
  BucketPartition buckets_;
  std::vector<std::set<VertexId>> cross_;  // slot(v, i) -> E(v, V_i)
  std::vector<VertexId> center_;           // slot(v, i) -> c_i(v)
  std::vector<std::set<VertexId>> cluster_;
  std::unordered_map<std::uint64_t, PairSet> pairs_;
  std::unordered_map<EdgeKey, std::uint8_t, EdgeKeyHash> roles_;
  std::set<EdgeKey> spanner_;
  std::unordered_map<EdgeKey, bool, EdgeKeyHash> touched_;  // edge -> was in spanner
  Changes last_;
  OpCounter* ops_;
  bool fault_armed_ = false;
};

}  // namespace dynspan
