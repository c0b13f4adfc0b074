#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dynspan/graph.hpp"
#include "dynspan/job_machine.hpp"
#include "dynspan/rng.hpp"
#include "dynspan/stream.hpp"

namespace dynspan {

/// What an adaptive adversary may look at: the current graph and output,
/// never the algorithm's random state.
struct AdversaryView {
  const DynamicGraph* graph = nullptr;
  std::span<const EdgeKey> spanner;
  /// Edge carried by the most chosen witness paths, if the algorithm has any.
  std::function<std::optional<EdgeKey>()> hottest_edge;
};

/// Edge update generator. next() returns nullopt once the budget is spent
/// and throws Exhausted when no legal move exists.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::optional<UpdateEvent> next(const AdversaryView& view) = 0;
  virtual std::string name() const = 0;
};

/// Uniform random insertion (probability p_insert) or deletion.
class RandomOblivious final : public Adversary {
 public:
  RandomOblivious(double p_insert, std::uint64_t budget, std::uint64_t seed);
  std::optional<UpdateEvent> next(const AdversaryView& view) override;
  std::string name() const override { return "random"; }

 private:
  double p_insert_;
  std::uint64_t budget_;
  std::uint64_t issued_ = 0;
  Rng rng_;
};

/// Deletes a uniformly random spanner edge (any edge if the spanner is
/// empty); inserts a random non-edge with probability p_insert.
class SpannerTargeting final : public Adversary {
 public:
  SpannerTargeting(double p_insert, std::uint64_t budget, std::uint64_t seed);
  std::optional<UpdateEvent> next(const AdversaryView& view) override;
  std::string name() const override { return "spanner-target"; }

 private:
  double p_insert_;
  std::uint64_t budget_;
  std::uint64_t issued_ = 0;
  Rng rng_;
};

/// Deletes the edge with the largest witness load (ties: smallest key);
/// inserts a random non-edge with probability p_insert.
class WitnessHammer final : public Adversary {
 public:
  WitnessHammer(double p_insert, std::uint64_t budget, std::uint64_t seed);
  std::optional<UpdateEvent> next(const AdversaryView& view) override;
  std::string name() const override { return "witness-hammer"; }

 private:
  double p_insert_;
  std::uint64_t budget_;
  std::uint64_t issued_ = 0;
  Rng rng_;
};

/// Plays back a stream file. Throws IllegalUpdate naming the line when an
/// event does not fit the current graph.
class Replay final : public Adversary {
 public:
  explicit Replay(UpdateStream stream, std::size_t start = 0);
  std::optional<UpdateEvent> next(const AdversaryView& view) override;
  std::string name() const override { return "replay"; }

 private:
  UpdateStream stream_;
  std::size_t pos_;
};

/// Machine deletion strategies for the job/machine engine.
class MachineAdversary {
 public:
  virtual ~MachineAdversary() = default;
  virtual std::optional<MachineId> next(const ProactiveResampler& engine) = 0;
  virtual std::string name() const = 0;
};

/// Deletes the machine with the largest load deg_A(x), ties by smallest id.
class MaxLoadMachine final : public MachineAdversary {
 public:
  explicit MaxLoadMachine(std::uint64_t budget) : budget_(budget) {}
  std::optional<MachineId> next(const ProactiveResampler& engine) override;
  std::string name() const override { return "max-load"; }

 private:
  std::uint64_t budget_;
  std::uint64_t issued_ = 0;
};

/// Deletes a uniformly random live machine.
class RandomMachine final : public MachineAdversary {
 public:
  RandomMachine(std::uint64_t budget, std::uint64_t seed) : budget_(budget), rng_(seed) {}
  std::optional<MachineId> next(const ProactiveResampler& engine) override;
  std::string name() const override { return "random"; }

 private:
  std::uint64_t budget_;
  std::uint64_t issued_ = 0;
  Rng rng_;
  std::vector<MachineId> live_;
  bool primed_ = false;
};

/// Uniformly random edge of g (nullopt if g is empty).
std::optional<EdgeKey> random_edge(const DynamicGraph& g, Rng& rng);
/// Uniformly random non-edge of g (nullopt if g is complete).
std::optional<EdgeKey> random_non_edge(const DynamicGraph& g, Rng& rng);
/// G(n, m): m distinct uniformly random edges.
DynamicGraph random_graph(std::size_t n, std::size_t m, Rng& rng);

}  // namespace dynspan
