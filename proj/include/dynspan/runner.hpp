#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dynspan/adversary.hpp"
#include "dynspan/graph.hpp"
#include "dynspan/instrumentation.hpp"
#include "dynspan/job_machine.hpp"
#include "dynspan/oracle.hpp"

namespace dynspan {

struct StepResult {
  std::vector<EdgeKey> added;
  std::vector<EdgeKey> removed;
  std::uint64_t resamples = 0;
};

/// Common face of the dynamic spanner algorithms for the driver.
class SpannerAlgorithm {
 public:
  virtual ~SpannerAlgorithm() = default;
  virtual std::string name() const = 0;
  virtual const DynamicGraph& graph() const = 0;
  virtual std::vector<EdgeKey> spanner() const = 0;
  virtual std::size_t spanner_size() const = 0;
  /// Stretch the output guarantees.
  virtual std::uint32_t stretch() const = 0;
  /// Throws IllegalUpdate for updates the algorithm does not accept.
  virtual StepResult apply(const UpdateEvent& ev) = 0;
  virtual std::optional<EdgeKey> hottest_edge() const { return std::nullopt; }
  /// Recomputes internal indices from scratch; description of the first mismatch.
  virtual std::optional<std::string> self_check() const { return std::nullopt; }
};

struct AlgorithmConfig {
  std::string algo = "det3";  // greedy, fd-greedy, det3, resample3
  unsigned k = 2;
  std::uint64_t seed = 1;
  std::uint64_t phase_len = 0;  // 0: default ceil(n^1.5)
  bool wrapped = false;
  bool inject_fault = false;
};

/// Throws BadArgs for unknown names or parameters.
std::unique_ptr<SpannerAlgorithm> make_algorithm(const AlgorithmConfig& cfg, DynamicGraph initial,
                                                 OpCounter* ops);

enum class CheckLevel { None, Sampled, Exact };

struct RunOptions {
  CheckLevel check = CheckLevel::None;
  std::size_t sample_count = 64;
  std::uint64_t check_seed = 0;
};

struct RunResult {
  std::vector<MetricsRow> rows;
  bool check_failed = false;
  std::uint64_t failed_step = 0;
  std::optional<EdgeKey> witness;
  std::uint32_t witness_dist = 0;
  std::string detail;  // index mismatch, when that is what failed
};

/// Drives `algo` with `adv` until the adversary is done or a check fails.
/// Exact checking also runs the algorithm's self_check after every update.
RunResult run_spanner(SpannerAlgorithm& algo, Adversary& adv, const RunOptions& opt,
                      OpCounter& ops);

/// Job/machine run. CSV columns are reused: recourse_add = recourse,
/// recourse_del = touched jobs, spanner_size = assigned jobs,
/// stretch_ok = feasibility.
RunResult run_machines(ProactiveResampler& engine, MachineAdversary& adv, OpCounter& ops);

}  // namespace dynspan
