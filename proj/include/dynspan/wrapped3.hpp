#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <set>
#include <unordered_map>
#include <vector>

#include "dynspan/graph.hpp"
#include "dynspan/instrumentation.hpp"
#include "dynspan/resample3.hpp"

namespace dynspan {

/// Randomized 3-spanner with the rebuild spread over the updates.
///
/// Period i covers updates [iL, (i+1)L). The active instance D_i absorbs
/// every update. In the background, D_{i+1} is built from the snapshot
/// G_{iL} during the first third, its output is merged into the answer
/// during the second, and the period's pending updates are replayed into it
/// three at a time during the last. At (i+1)L it becomes active and the old
/// instance's edges leave the answer gradually during the next first third.
/// Each instance therefore lives for 2L updates.
class Wrapped3Spanner {
 public:
  Wrapped3Spanner(DynamicGraph g, std::uint64_t seed, std::uint64_t period,
                  OpCounter* ops = nullptr);

  Resample3Phase::Changes insert(EdgeKey e);
  Resample3Phase::Changes erase(EdgeKey e);

  const DynamicGraph& graph() const noexcept { return graph_; }
  std::vector<EdgeKey> spanner() const { return {output_.begin(), output_.end()}; }
  const std::set<EdgeKey>& spanner_set() const noexcept { return output_; }
  std::size_t spanner_size() const noexcept { return output_.size(); }
  bool in_spanner(EdgeKey e) const { return output_.contains(e); }

  std::uint64_t period() const noexcept { return period_; }
  std::uint64_t steps() const noexcept { return steps_; }
  std::uint64_t switches() const noexcept { return switches_; }
  const Resample3Phase& active() const noexcept { return *active_; }

  /// Operations the background rebuild may spend per update:
  /// ceil(W(n) / floor(L/3)) + one indivisible unit.
  static std::uint64_t rebuild_chunk(std::size_t n, std::uint64_t period);
  /// Declared per-update budget C * ceil(sqrt n) * ceil(log2 n) + rebuild_chunk.
  static std::uint64_t budget(std::size_t n, std::uint64_t period, std::uint64_t c);

 private:
  template <class Fn>
  Resample3Phase::Changes update(EdgeKey e, bool insert, Fn&& apply);
  void start_period();
  void background(std::uint64_t r);
  Resample3Phase::Builder::Item snapshot_next();
  bool fed(EdgeKey e) const;
  bool old_remaining(EdgeKey e) const;
  void touch(EdgeKey e);
  void charge(std::uint64_t n = 1) noexcept {
    if (ops_) ops_->charge(Module::Wrapper, n);
  }

  std::uint64_t seed_;
  std::uint64_t period_;
  std::uint64_t third_;
  OpCounter* ops_;
  DynamicGraph graph_;
  std::uint64_t steps_ = 0;
  std::uint64_t switches_ = 0;

  std::unique_ptr<Resample3Phase> active_;
  std::unique_ptr<Resample3Phase> old_;
  std::unique_ptr<Resample3Phase> next_;
  std::unique_ptr<Resample3Phase::Builder> builder_;

  // Snapshot cursor: edges are visited in key order; toggled_ remembers the
  // snapshot membership of every edge changed since the snapshot.
  std::map<EdgeKey, bool> toggled_;
  VertexId cursor_u_ = 0;
  std::optional<VertexId> cursor_v_;

  std::deque<UpdateEvent> pending_;

  // Feed cursor over next_'s output and discard cursor over old_'s output.
  std::set<EdgeKey>::const_iterator feed_it_;
  bool feeding_ = false;
  bool fed_all_ = false;
  std::uint64_t feed_chunk_ = 0;
  std::set<EdgeKey>::const_iterator discard_it_;
  std::uint64_t discard_chunk_ = 0;

  std::set<EdgeKey> output_;
  std::unordered_map<EdgeKey, bool, EdgeKeyHash> touched_;
};

}  // namespace dynspan
