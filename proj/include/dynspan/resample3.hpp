#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dynspan/buckets.hpp"
#include "dynspan/graph.hpp"
#include "dynspan/instrumentation.hpp"
#include "dynspan/job_machine.hpp"

namespace dynspan {

/// Default phase length ceil(n^1.5).
std::uint64_t default_phase_length(std::size_t n);

/// One phase of the randomized 3-spanner.
///
/// Output = E1 (one partner per vertex and foreign bucket) + E2 (edges inside
/// a bucket) + E3 (for each same-bucket pair u, u', the two edges to a
/// sampled common neighbor) + every edge inserted during the phase.
/// Witnesses are kept by a proactive resampling engine where the job is the
/// pair, a machine is a phase-start edge and each common neighbor w gives the
/// routine {(u, w), (u', w)}. Inserted edges join the structures only when
/// the next phase is built.
class Resample3Phase {
 public:
  struct Changes {
    std::vector<EdgeKey> added;
    std::vector<EdgeKey> removed;
    std::uint64_t resamples = 0;
    std::uint64_t touched = 0;
    std::size_t size() const noexcept { return added.size() + removed.size(); }
  };

  class Builder;

  /// Builds in one go. `edges` need not be sorted.
  static Resample3Phase build(std::size_t n, std::span<const EdgeKey> edges, std::uint64_t seed,
                              std::uint64_t phase_len, OpCounter* ops = nullptr);

  /// Throws EdgeExists, PhaseExhausted.
  Changes insert(EdgeKey e);
  /// Throws EdgeMissing, PhaseExhausted.
  Changes erase(EdgeKey e);

  const DynamicGraph& graph() const noexcept { return graph_; }
  const BucketPartition& buckets() const noexcept { return buckets_; }
  std::vector<EdgeKey> spanner() const { return {spanner_.begin(), spanner_.end()}; }
  const std::set<EdgeKey>& spanner_set() const noexcept { return spanner_; }
  std::size_t spanner_size() const noexcept { return spanner_.size(); }
  bool in_spanner(EdgeKey e) const { return spanner_.contains(e); }

  std::uint64_t phase_length() const noexcept { return phase_len_; }
  std::uint64_t steps() const noexcept { return steps_; }
  bool exhausted() const noexcept { return steps_ >= phase_len_; }
  std::size_t buffered() const noexcept { return buffer_.size(); }

  /// Current witness of a same-bucket pair, or kNoVertex.
  VertexId witness(VertexId u, VertexId v) const;
  /// Partner of v in bucket i, or kNoVertex.
  VertexId partner(VertexId v, std::uint32_t i) const { return partner_[slot(v, i)]; }
  /// Number of chosen witness paths using e.
  std::uint64_t edge_load(EdgeKey e) const;
  /// Edge with the largest witness load (ties: smallest key), if any graph edge exists.
  std::optional<EdgeKey> max_load_edge() const;

  const ProactiveResampler& engine() const noexcept { return engine_; }
  std::uint64_t resample_calls() const noexcept { return engine_.resample_calls(); }

  /// Recomputes partnerships, partners and the output from the graph and
  /// compares. Returns the first mismatch.
  std::optional<std::string> check_index() const;

 private:
  friend class Builder;
  Resample3Phase(std::size_t n, std::uint64_t seed, std::uint64_t phase_len, OpCounter* ops);

  std::size_t slot(VertexId v, std::uint32_t i) const noexcept {
    return static_cast<std::size_t>(v) * buckets_.count() + i;
  }
  static std::uint64_t pair_key(VertexId a, VertexId b) noexcept {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }
  void ref(EdgeKey e);
  void unref(EdgeKey e);
  void sync_job(JobId u);
  void begin_update();
  Changes finish_update();
  void charge(std::uint64_t n = 1) noexcept {
    if (ops_) ops_->charge(Module::Resample3, n);
  }

  std::size_t n_;
  BucketPartition buckets_;
  std::uint64_t phase_len_;
  std::uint64_t steps_ = 0;
  OpCounter* ops_;
  bool building_ = true;

  DynamicGraph graph_;  // base + buffer
  DynamicGraph base_;   // phase-start edges minus deletions
  std::set<EdgeKey> buffer_;
  std::vector<std::set<VertexId>> nbr_;  // slot(v, i) -> base neighbors of v in V_i
  std::vector<VertexId> partner_;
  std::map<std::uint64_t, std::set<VertexId>> partnerships_;

  ProactiveResampler engine_;
  std::unordered_map<EdgeKey, MachineId, EdgeKeyHash> machine_of_;
  std::vector<EdgeKey> edge_of_;
  std::vector<std::pair<VertexId, VertexId>> pair_of_job_;
  std::unordered_map<std::uint64_t, JobId> job_of_;
  std::vector<VertexId> witness_of_;  // per routine
  std::vector<RoutineId> held_;       // per job, mirrors the engine

  std::unordered_map<EdgeKey, std::uint32_t, EdgeKeyHash> refs_;
  std::set<EdgeKey> spanner_;
  std::unordered_map<EdgeKey, bool, EdgeKeyHash> touched_;
  Changes last_;
};

/// Resumable construction of a phase in bounded chunks. Edges are ingested
/// one at a time; `step` then performs work until at least `budget`
/// operations were spent (each unit of work costs at most unit_cost()).
class Resample3Phase::Builder {
 public:
  /// What an ingest source produced in one unit of work.
  struct Item {
    enum class Kind { Edge, Skip, End };
    Kind kind = Kind::End;
    EdgeKey edge{};
  };
  using Source = std::function<Item()>;

  Builder(std::size_t n, std::uint64_t seed, std::uint64_t phase_len, OpCounter* ops = nullptr);
  Builder(const Builder&) = delete;
  Builder& operator=(const Builder&) = delete;

  /// Edges must arrive in ascending order (machine ids follow key order).
  void ingest(EdgeKey e);
  void seal_ingest();
  /// Runs units until `budget` operations were spent or the build is done.
  /// While ingesting, each unit pulls one item from `source`, which may
  /// charge its own work to work_counter(). Returns done().
  bool step(std::uint64_t budget, const Source& source = {});
  bool done() const noexcept { return stage_ == Stage::Done; }
  Resample3Phase finish() &&;

  std::uint64_t work_done() const noexcept { return work_; }
  std::uint64_t max_unit() const noexcept { return max_unit_; }
  OpCounter& work_counter() noexcept { return scratch_; }
  /// Upper bound on the total work of building a phase on n vertices.
  static std::uint64_t work_bound(std::size_t n);
  /// Largest cost of one indivisible unit of work.
  static constexpr std::uint64_t unit_cost() noexcept { return 12; }

 private:
  enum class Stage { Ingest, Partnerships, Vertices, Routines, Initial, Done };

  void unit(const Source& source);
  void advance_center();

  OpCounter* ops_;
  OpCounter scratch_;  // the phase charges here while under construction
  std::unique_ptr<Resample3Phase> phase_;
  Stage stage_ = Stage::Ingest;
  std::optional<EdgeKey> last_ingested_;
  std::uint64_t work_ = 0;
  std::uint64_t max_unit_ = 0;
  // Partnerships cursor: center w, bucket i, pair (a, b) inside nbr(w, i).
  VertexId w_ = 0;
  std::uint32_t i_ = 0;
  std::set<VertexId>::const_iterator a_, b_;
  bool pair_open_ = false;
  // Vertices cursor.
  VertexId v_ = 0;
  // Routines cursor.
  std::map<std::uint64_t, std::set<VertexId>>::const_iterator job_it_;
  std::set<VertexId>::const_iterator wit_it_;
  bool job_open_ = false;
  // Initial assignment cursor.
  JobId next_job_ = 0;
};

/// Randomized 3-spanner that rebuilds a fresh phase in one go whenever the
/// current phase has absorbed its L updates.
class Resample3Spanner {
 public:
  Resample3Spanner(DynamicGraph g, std::uint64_t seed, std::uint64_t phase_len,
                   OpCounter* ops = nullptr);

  Resample3Phase::Changes insert(EdgeKey e);
  Resample3Phase::Changes erase(EdgeKey e);

  const Resample3Phase& phase() const noexcept { return phase_; }
  const DynamicGraph& graph() const noexcept { return phase_.graph(); }
  std::vector<EdgeKey> spanner() const { return phase_.spanner(); }
  std::size_t spanner_size() const noexcept { return phase_.spanner_size(); }
  bool in_spanner(EdgeKey e) const { return phase_.in_spanner(e); }
  std::uint64_t phase_index() const noexcept { return index_; }
  std::uint64_t phase_length() const noexcept { return phase_len_; }

 private:
  template <class Fn>
  Resample3Phase::Changes update(Fn&& apply);

  std::uint64_t seed_;
  std::uint64_t phase_len_;
  OpCounter* ops_;
  std::uint64_t index_ = 0;
  Resample3Phase phase_;
};

}  // namespace dynspan
