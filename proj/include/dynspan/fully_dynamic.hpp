#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "dynspan/graph.hpp"
#include "dynspan/greedy_spanner.hpp"
#include "dynspan/instrumentation.hpp"

namespace dynspan {

/// Exponent of the base level: greatest l with 2^l <= n^(1 + 1/k).
unsigned base_level_exponent(std::size_t n, unsigned k);
/// Planned number of levels above the base: ceil(log2 n^(1 - 1/k)).
unsigned planned_top_level(std::size_t n, unsigned k);

/// Fully dynamic (2k-1)-spanner built from decremental greedy instances.
///
/// Edges are partitioned into levels E_0..E_j. A binary counter of
/// insertions decides placement: when the highest flipped bit g is at most
/// l0 the edge joins E_0 (kept whole in the output); otherwise every level
/// below h = g - l0 merges into E_h together with the new edge and the
/// greedy spanner of E_h is rebuilt. Deletions go to the owning level.
class FullyDynamicSpanner {
 public:
  struct InsertResult {
    unsigned flipped_bit = 0;
    std::optional<unsigned> rebuilt_level;
    std::size_t rebuilt_size = 0;
  };

  FullyDynamicSpanner(std::size_t n, unsigned k, OpCounter* ops = nullptr);

  /// Throws EdgeExists.
  InsertResult insert(EdgeKey e);
  /// Returns the edges the owning level added. Throws EdgeMissing.
  std::vector<EdgeKey> erase(EdgeKey e);

  /// Union of E_0 and all level spanners, ascending.
  std::vector<EdgeKey> spanner() const;
  std::size_t spanner_size() const noexcept;
  bool in_spanner(EdgeKey e) const;

  const DynamicGraph& graph() const noexcept { return graph_; }
  unsigned k() const noexcept { return k_; }
  unsigned base_exponent() const noexcept { return ell0_; }
  unsigned planned_levels() const noexcept { return top_; }
  std::uint64_t counter() const noexcept { return counter_; }
  std::size_t level_count() const noexcept { return levels_.size(); }
  std::size_t level_size(unsigned level) const;
  std::optional<unsigned> level_of(EdgeKey e) const;
  const GreedySpanner* level_spanner(unsigned level) const;

  /// Exact per-step output changes (set difference of consecutive outputs).
  const RecourseLog& recourse() const noexcept { return recourse_; }
  /// Additions charged the way the reduction accounts them: every edge a
  /// level spanner ever adds (rebuilds included) plus every E_0 insertion.
  std::uint64_t charged_recourse() const noexcept { return charged_; }

  /// Partition and capacity invariants; returns a description of the first
  /// violation, or nullopt.
  std::optional<std::string> check_invariants() const;

 private:
  struct Level {
    std::set<EdgeKey> edges;
    std::optional<GreedySpanner> greedy;
  };

  std::size_t n_;
  unsigned k_;
  unsigned ell0_;
  unsigned top_;
  std::uint64_t counter_ = 0;
  DynamicGraph graph_;
  std::set<EdgeKey> base_;  // E_0
  std::vector<Level> levels_;  // levels_[0] unused
  std::map<EdgeKey, unsigned> owner_;
  std::size_t spanner_size_ = 0;
  RecourseLog recourse_;
  std::uint64_t charged_ = 0;
  OpCounter* ops_;
};

}  // namespace dynspan
