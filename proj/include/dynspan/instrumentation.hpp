#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dynspan {

/// Owner of a charged elementary operation.
enum class Module : std::uint8_t {
  Graph,
  Greedy,
  FullyDynamic,
  Det3,
  JobMachine,
  Resample3,
  Rebuild,
  Wrapper,
};

inline constexpr std::size_t kModuleCount = 8;

std::string_view to_string(Module m) noexcept;

/// Counts ordered-set operations (insert / erase / find / min) per update.
/// This is the update-time proxy: one charge per balanced-BST operation.
class OpCounter {
 public:
  void charge(Module m, std::uint64_t n = 1) noexcept {
    step_[static_cast<std::size_t>(m)] += n;
  }

  /// Closes the current step and folds it into the totals.
  void end_step() noexcept;
  /// Drops the pending step without recording it (preprocessing work).
  void discard_step() noexcept { step_.fill(0); }

  std::uint64_t pending() const noexcept;
  std::uint64_t last_step() const noexcept { return last_; }
  std::uint64_t max_step() const noexcept { return max_; }
  std::uint64_t steps() const noexcept { return steps_; }
  std::uint64_t total() const noexcept;
  std::uint64_t total(Module m) const noexcept { return total_[static_cast<std::size_t>(m)]; }
  std::uint64_t last_step(Module m) const noexcept { return last_by_[static_cast<std::size_t>(m)]; }

 private:
  std::array<std::uint64_t, kModuleCount> step_{};
  std::array<std::uint64_t, kModuleCount> last_by_{};
  std::array<std::uint64_t, kModuleCount> total_{};
  std::uint64_t last_ = 0;
  std::uint64_t max_ = 0;
  std::uint64_t steps_ = 0;
};

/// Per-step spanner edge additions |F^t \ F^{t-1}| and removals.
class RecourseLog {
 public:
  struct Entry {
    std::uint64_t added = 0;
    std::uint64_t removed = 0;
  };

  void record(std::uint64_t added, std::uint64_t removed);

  std::span<const Entry> entries() const noexcept { return entries_; }
  std::uint64_t total_added() const noexcept { return total_added_; }
  std::uint64_t total_removed() const noexcept { return total_removed_; }
  std::uint64_t max_added() const noexcept { return max_added_; }
  const Entry& last() const { return entries_.back(); }
  bool empty() const noexcept { return entries_.empty(); }

 private:
  std::vector<Entry> entries_;
  std::uint64_t total_added_ = 0;
  std::uint64_t total_removed_ = 0;
  std::uint64_t max_added_ = 0;
};

/// One (step, machine) observation of a job/machine run.
struct OverheadSample {
  std::uint64_t step = 0;
  std::uint32_t machine = 0;
  std::uint64_t load = 0;
  double target = 0.0;

  double residual(double alpha, double beta) const noexcept {
    return static_cast<double>(load) - alpha * target - beta;
  }
};

/// Which recorded samples enter the measurement.
struct SamplePolicy {
  std::uint64_t stride = 1;  // every stride-th sample
};

/// Fraction of sampled (t, x) pairs with load > alpha * target + beta.
double measure_overhead(std::span<const OverheadSample> samples, double alpha, double beta,
                        SamplePolicy policy = {});

/// One row of the metrics CSV.
struct MetricsRow {
  std::uint64_t step = 0;
  std::string event;
  std::uint64_t recourse_add = 0;
  std::uint64_t recourse_del = 0;
  std::uint64_t spanner_size = 0;
  std::uint64_t op_count = 0;
  std::uint64_t resamples = 0;
  bool stretch_ok = true;
};

inline constexpr std::string_view kMetricsHeader =
    "step,event,recourse_add,recourse_del,spanner_size,op_count,resamples,stretch_ok";

void write_metrics_csv(std::ostream& os, std::span<const MetricsRow> rows);

}  // namespace dynspan
