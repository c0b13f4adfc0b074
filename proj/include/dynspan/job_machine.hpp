#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dynspan/instrumentation.hpp"
#include "dynspan/rng.hpp"

namespace dynspan {

using JobId = std::uint32_t;
using MachineId = std::uint32_t;
using RoutineId = std::uint32_t;

inline constexpr RoutineId kUnassigned = std::numeric_limits<RoutineId>::max();
inline constexpr std::uint64_t kNever = std::numeric_limits<std::uint64_t>::max();

struct Routine {
  JobId job = 0;
  std::vector<MachineId> machines;
};

/// Jobs, machines and routines (hyperedges job -> machine set). Routines of
/// one job share no machine.
class HyperInstance {
 public:
  HyperInstance() = default;
  /// Throws InvalidInstance or DisjointnessViolated.
  HyperInstance(std::uint32_t jobs, std::uint32_t machines, std::vector<Routine> routines);

  std::uint32_t job_count() const noexcept { return jobs_; }
  std::uint32_t machine_count() const noexcept { return machines_; }
  const std::vector<Routine>& routines() const noexcept { return routines_; }

  /// "J <count>", "M <count>", then "R <job> <machine>..." per routine.
  /// Blank lines and lines starting with '#' are skipped. Throws StreamParse.
  static HyperInstance parse(std::istream& in);
  void write(std::ostream& out) const;

  /// Every job gets 1..max_routines routines of `width` machines each,
  /// machine-disjoint within the job.
  static HyperInstance random(std::uint32_t jobs, std::uint32_t machines,
                              std::uint32_t max_routines, std::uint32_t width, Rng& rng);

 private:
  std::uint32_t jobs_ = 0;
  std::uint32_t machines_ = 0;
  std::vector<Routine> routines_;
};

/// Proactive resampling over a job/machine instance.
///
/// Deleting machine x at clock T kills every routine using x. Each job whose
/// assigned routine died (touched) is scheduled at T + 2^k for k >= 0 up to
/// the horizon; then T advances and every job scheduled at the new T is
/// resampled uniformly over its live routines.
class ProactiveResampler {
 public:
  struct StepReport {
    std::uint64_t step = 0;  // clock after the step
    std::vector<JobId> touched;
    std::vector<JobId> resampled;
    std::uint64_t recourse = 0;
    std::uint64_t schedule_added = 0;
  };

  struct ScheduleEntry {
    std::uint64_t time;
    std::uint64_t created;
  };

  struct ResampleEvent {
    std::uint64_t step;
    RoutineId routine;  // kUnassigned if the job had no live routine
  };

  ProactiveResampler(std::uint64_t seed, std::uint64_t horizon, OpCounter* ops = nullptr);
  /// Builds the instance and assigns every job (step 0).
  ProactiveResampler(const HyperInstance& inst, std::uint64_t seed, std::uint64_t horizon,
                     OpCounter* ops = nullptr);

  // Incremental construction, used before the first deletion.
  JobId add_job();
  MachineId add_machine();
  /// Throws UnknownJob, MachineMissing or DisjointnessViolated.
  RoutineId add_routine(JobId job, std::span<const MachineId> machines);
  /// Initial assignment of one job. Throws UnknownJob.
  RoutineId initialize(JobId job);
  /// Closes construction: records the initial assignment as the first
  /// recourse entry. Called implicitly by the first step.
  void seal();

  void set_op_counter(OpCounter* ops) noexcept { ops_ = ops; }

  /// Uniform over the job's live routines; kUnassigned if none.
  RoutineId resample(JobId job);

  /// Throws MachineMissing, HorizonExhausted.
  StepReport delete_machine(MachineId x);
  /// Advances the clock without a deletion. Throws HorizonExhausted.
  StepReport idle_step();

  std::uint64_t clock() const noexcept { return clock_; }
  std::uint64_t horizon() const noexcept { return horizon_; }
  std::size_t job_count() const noexcept { return live_.size(); }
  std::size_t machine_count() const noexcept { return machine_alive_.size(); }
  std::size_t routine_count() const noexcept { return routines_.size(); }
  bool machine_alive(MachineId x) const { return machine_alive_.at(x); }
  bool routine_alive(RoutineId r) const { return died_at_.at(r) == kNever; }
  const Routine& routine(RoutineId r) const { return routines_.at(r); }
  std::span<const RoutineId> live_routines(JobId u) const { return live_.at(u); }
  std::span<const RoutineId> machine_routines(MachineId x) const { return by_machine_.at(x); }
  RoutineId assigned(JobId u) const { return assigned_.at(u); }
  std::size_t assigned_count() const noexcept { return assigned_count_; }

  /// deg_A(x). Throws MachineMissing.
  std::uint64_t load(MachineId x) const;
  /// Sum over live routines r at x of 1 / (live routines of job(r)).
  boost::multiprecision::cpp_rational target(MachineId x) const;
  double target_approx(MachineId x) const;
  /// Live machine with the largest load, ties by smallest id; nullopt if none.
  std::optional<MachineId> max_load_machine() const;

  const std::set<std::uint64_t>& schedule(JobId u) const { return schedule_.at(u); }
  std::span<const ScheduleEntry> schedule_log(JobId u) const { return entries_.at(u); }
  std::span<const ResampleEvent> resample_log(JobId u) const { return events_.at(u); }

  /// Steps s < t of resample events of job(r), with r live at s, that are not
  /// superseded by a schedule entry t' in (s, t) created at or before s.
  /// Throws UnknownRoutine.
  std::vector<std::uint64_t> relevant_steps(std::uint64_t t, RoutineId r) const;
  std::uint64_t rel_count(std::uint64_t t, RoutineId r) const {
    return relevant_steps(t, r).size();
  }

  std::uint64_t resample_calls() const noexcept { return resample_calls_; }
  const RecourseLog& recourse() const noexcept { return recourse_; }

  /// Feasibility and load bookkeeping; returns the first violation.
  std::optional<std::string> check_invariants() const;

 private:
  void assign(JobId u, RoutineId r);
  void unassign(JobId u);
  void bump_load(MachineId x, std::int64_t delta);
  void drain(StepReport& report);
  void charge(std::uint64_t n = 1) noexcept {
    if (ops_) ops_->charge(Module::JobMachine, n);
  }

  Rng rng_;
  std::uint64_t horizon_;
  std::uint64_t clock_ = 0;
  OpCounter* ops_;

  std::vector<Routine> routines_;
  std::vector<std::uint64_t> died_at_;
  std::vector<std::uint32_t> slot_;  // position of r in live_[job(r)]
  std::vector<std::vector<RoutineId>> live_;
  std::vector<std::vector<MachineId>> job_machines_;  // sorted, for disjointness
  std::vector<RoutineId> assigned_;
  std::size_t assigned_count_ = 0;

  std::vector<bool> machine_alive_;
  std::vector<std::vector<RoutineId>> by_machine_;
  std::vector<std::uint64_t> load_;
  std::set<std::pair<std::uint64_t, MachineId>, std::greater<>> by_load_;  // (load, ~id)

  std::vector<std::set<std::uint64_t>> schedule_;
  std::vector<std::vector<JobId>> due_;  // List[t]
  std::vector<std::vector<ScheduleEntry>> entries_;
  std::vector<std::vector<ResampleEvent>> events_;

  bool sealed_ = false;
  std::uint64_t resample_calls_ = 0;
  RecourseLog recourse_;
};

}  // namespace dynspan
