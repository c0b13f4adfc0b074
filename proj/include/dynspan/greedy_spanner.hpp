#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "dynspan/graph.hpp"
#include "dynspan/instrumentation.hpp"

namespace dynspan {

/// Decremental greedy (2k-1)-spanner. Spanner edges leave only when the
/// adversary deletes them; losing one triggers a greedy pass over all
/// non-spanner edges (ascending EdgeKey), each added iff its spanner distance
/// is at least 2k at inspection time.
class GreedySpanner {
 public:
  /// Greedy over g in ascending EdgeKey order. k >= 1.
  GreedySpanner(DynamicGraph g, unsigned k, OpCounter* ops = nullptr);

  /// Deletes e from the graph; returns the edges added to the spanner.
  /// Throws EdgeMissing.
  std::vector<EdgeKey> handle_delete(EdgeKey e);

  unsigned k() const noexcept { return k_; }
  const DynamicGraph& graph() const noexcept { return graph_; }
  const DynamicGraph& spanner_graph() const noexcept { return spanner_; }
  /// Spanner edges in the order greedy accepted them (the inspection prefix).
  const std::vector<EdgeKey>& spanner_sequence() const noexcept { return sequence_; }
  const std::set<EdgeKey>& non_spanner() const noexcept { return non_spanner_; }
  std::vector<EdgeKey> spanner_edges() const { return spanner_.edges(); }
  std::size_t spanner_size() const noexcept { return sequence_.size(); }
  bool in_spanner(EdgeKey e) const { return spanner_.has_edge(e); }

  /// Edges ever added to the spanner, including the initial build.
  std::uint64_t total_recourse() const noexcept { return recourse_.total_added(); }
  const RecourseLog& recourse() const noexcept { return recourse_; }

 private:
  bool spanner_within(EdgeKey e);
  void accept(EdgeKey e);

  unsigned k_;
  DynamicGraph graph_;
  DynamicGraph spanner_;
  std::vector<EdgeKey> sequence_;
  std::set<EdgeKey> non_spanner_;
  DistanceProbe probe_;
  RecourseLog recourse_;
  OpCounter* ops_;
};

}  // namespace dynspan
