#include "dynspan/job_machine.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "dynspan/error.hpp"

namespace dynspan {

namespace {

void check_disjoint(std::vector<MachineId>& used, std::span<const MachineId> machines, JobId job) {
  for (const MachineId x : machines) {
    const auto it = std::lower_bound(used.begin(), used.end(), x);
    if (it != used.end() && *it == x) {
      fail(Errc::DisjointnessViolated,
           "job " + std::to_string(job) + " uses machine " + std::to_string(x) + " twice");
    }
    used.insert(it, x);
  }
}

}  // namespace

HyperInstance::HyperInstance(std::uint32_t jobs, std::uint32_t machines,
                             std::vector<Routine> routines)
    : jobs_(jobs), machines_(machines), routines_(std::move(routines)) {
  std::vector<std::vector<MachineId>> used(jobs);
  for (const Routine& r : routines_) {
    if (r.job >= jobs) fail(Errc::InvalidInstance, "job " + std::to_string(r.job) + " out of range");
    if (r.machines.empty()) fail(Errc::InvalidInstance, "routine without machines");
    for (const MachineId x : r.machines) {
      if (x >= machines) fail(Errc::InvalidInstance, "machine " + std::to_string(x) + " out of range");
    }
    check_disjoint(used[r.job], r.machines, r.job);
  }
}

HyperInstance HyperInstance::parse(std::istream& in) {
  std::optional<std::uint32_t> jobs;
  std::optional<std::uint32_t> machines;
  std::vector<Routine> routines;
  std::string line;
  std::size_t lineno = 0;
  auto bad = [&](const std::string& why) {
    fail(Errc::StreamParse, "line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "J" || tag == "M") {
      std::int64_t v;
      if (!(ls >> v) || v < 0) bad("expected a count after " + tag);
      (tag == "J" ? jobs : machines) = static_cast<std::uint32_t>(v);
    } else if (tag == "R") {
      if (!jobs || !machines) bad("routine before J/M header");
      std::int64_t job;
      if (!(ls >> job) || job < 0) bad("expected a job id");
      Routine r{static_cast<JobId>(job), {}};
      std::int64_t x;
      while (ls >> x) {
        if (x < 0) bad("negative machine id");
        r.machines.push_back(static_cast<MachineId>(x));
      }
      if (!ls.eof()) bad("malformed machine list");
      routines.push_back(std::move(r));
    } else {
      bad("unknown record '" + tag + "'");
    }
    std::string rest;
    if (tag != "R" && (ls >> rest)) bad("trailing text");
  }
  if (!jobs || !machines) fail(Errc::StreamParse, "missing J or M header");
  return HyperInstance(*jobs, *machines, std::move(routines));
}

void HyperInstance::write(std::ostream& out) const {
  out << "J " << jobs_ << "\nM " << machines_ << '\n';
  for (const Routine& r : routines_) {
    out << "R " << r.job;
    for (const MachineId x : r.machines) out << ' ' << x;
    out << '\n';
  }
}

HyperInstance HyperInstance::random(std::uint32_t jobs, std::uint32_t machines,
                                    std::uint32_t max_routines, std::uint32_t width, Rng& rng) {
  if (max_routines == 0 || width == 0 ||
      static_cast<std::uint64_t>(max_routines) * width > machines) {
    fail(Errc::BadArgs, "instance parameters leave no disjoint routines");
  }
  std::vector<Routine> routines;
  std::vector<MachineId> used;
  for (JobId u = 0; u < jobs; ++u) {
    const auto count = 1 + static_cast<std::uint32_t>(uniform_below(rng, max_routines));
    used.clear();
    for (std::uint32_t k = 0; k < count; ++k) {
      Routine r{u, {}};
      while (r.machines.size() < width) {
        const auto x = static_cast<MachineId>(uniform_below(rng, machines));
        if (std::find(used.begin(), used.end(), x) != used.end()) continue;
        used.push_back(x);
        r.machines.push_back(x);
      }
      routines.push_back(std::move(r));
    }
  }
  return HyperInstance(jobs, machines, std::move(routines));
}

ProactiveResampler::ProactiveResampler(std::uint64_t seed, std::uint64_t horizon, OpCounter* ops)
    : rng_(seed), horizon_(horizon), ops_(ops), due_(horizon + 2) {}

ProactiveResampler::ProactiveResampler(const HyperInstance& inst, std::uint64_t seed,
                                       std::uint64_t horizon, OpCounter* ops)
    : ProactiveResampler(seed, horizon, ops) {
  for (std::uint32_t u = 0; u < inst.job_count(); ++u) add_job();
  for (std::uint32_t x = 0; x < inst.machine_count(); ++x) add_machine();
  for (const Routine& r : inst.routines()) add_routine(r.job, r.machines);
  for (JobId u = 0; u < inst.job_count(); ++u) initialize(u);
  seal();
}

JobId ProactiveResampler::add_job() {
  live_.emplace_back();
  job_machines_.emplace_back();
  assigned_.push_back(kUnassigned);
  schedule_.emplace_back();
  entries_.emplace_back();
  events_.emplace_back();
  return static_cast<JobId>(live_.size() - 1);
}

MachineId ProactiveResampler::add_machine() {
  const auto x = static_cast<MachineId>(machine_alive_.size());
  machine_alive_.push_back(true);
  by_machine_.emplace_back();
  load_.push_back(0);
  by_load_.emplace(0, ~x);
  return x;
}

RoutineId ProactiveResampler::add_routine(JobId job, std::span<const MachineId> machines) {
  if (job >= live_.size()) fail(Errc::UnknownJob, std::to_string(job));
  if (machines.empty()) fail(Errc::InvalidInstance, "routine without machines");
  for (const MachineId x : machines) {
    if (x >= machine_alive_.size() || !machine_alive_[x]) {
      fail(Errc::MachineMissing, std::to_string(x));
    }
  }
  check_disjoint(job_machines_[job], machines, job);
  const auto r = static_cast<RoutineId>(routines_.size());
  routines_.push_back({job, {machines.begin(), machines.end()}});
  died_at_.push_back(kNever);
  slot_.push_back(static_cast<std::uint32_t>(live_[job].size()));
  live_[job].push_back(r);
  for (const MachineId x : machines) by_machine_[x].push_back(r);
  charge(1 + machines.size());
  return r;
}

RoutineId ProactiveResampler::initialize(JobId job) {
  if (job >= live_.size()) fail(Errc::UnknownJob, std::to_string(job));
  return resample(job);
}

void ProactiveResampler::seal() {
  if (sealed_) return;
  sealed_ = true;
  recourse_.record(assigned_count_, 0);
}

void ProactiveResampler::bump_load(MachineId x, std::int64_t delta) {
  if (machine_alive_[x]) by_load_.erase({load_[x], ~x});
  load_[x] = static_cast<std::uint64_t>(static_cast<std::int64_t>(load_[x]) + delta);
  if (machine_alive_[x]) by_load_.emplace(load_[x], ~x);
  charge(2);
}

void ProactiveResampler::assign(JobId u, RoutineId r) {
  assigned_[u] = r;
  ++assigned_count_;
  for (const MachineId x : routines_[r].machines) bump_load(x, +1);
}

void ProactiveResampler::unassign(JobId u) {
  const RoutineId r = assigned_[u];
  if (r == kUnassigned) return;
  for (const MachineId x : routines_[r].machines) bump_load(x, -1);
  assigned_[u] = kUnassigned;
  --assigned_count_;
}

RoutineId ProactiveResampler::resample(JobId job) {
  if (job >= live_.size()) fail(Errc::UnknownJob, std::to_string(job));
  ++resample_calls_;
  charge();
  const auto& live = live_[job];
  const RoutineId pick = live.empty() ? kUnassigned : live[uniform_below(rng_, live.size())];
  events_[job].push_back({clock_, pick});
  if (pick != assigned_[job]) {
    unassign(job);
    if (pick != kUnassigned) assign(job, pick);
  }
  return pick;
}

void ProactiveResampler::drain(StepReport& report) {
  auto& due = due_[clock_];
  for (const JobId u : due) {
    schedule_[u].erase(clock_);
    const RoutineId before = assigned_[u];
    const RoutineId after = resample(u);
    report.resampled.push_back(u);
    if (after != kUnassigned && after != before) ++report.recourse;
  }
  charge(due.size());
  std::vector<JobId>().swap(due);
  report.step = clock_;
  recourse_.record(report.recourse, report.touched.size());
}

ProactiveResampler::StepReport ProactiveResampler::delete_machine(MachineId x) {
  if (x >= machine_alive_.size() || !machine_alive_[x]) {
    fail(Errc::MachineMissing, std::to_string(x));
  }
  if (clock_ >= horizon_) fail(Errc::HorizonExhausted, "clock " + std::to_string(clock_));
  seal();
  StepReport report;
  by_load_.erase({load_[x], ~x});
  machine_alive_[x] = false;
  charge();

  for (const RoutineId r : by_machine_[x]) {
    if (died_at_[r] != kNever) continue;
    died_at_[r] = clock_ + 1;
    const JobId u = routines_[r].job;
    auto& live = live_[u];
    const std::uint32_t pos = slot_[r];
    live[pos] = live.back();
    slot_[live[pos]] = pos;
    live.pop_back();
    charge(2);
    if (assigned_[u] == r) {
      unassign(u);
      report.touched.push_back(u);
    }
  }

  for (const JobId u : report.touched) {
    for (std::uint64_t step = 1; clock_ + step <= horizon_; step <<= 1) {
      const std::uint64_t t = clock_ + step;
      entries_[u].push_back({t, clock_});
      if (schedule_[u].insert(t).second) due_[t].push_back(u);
      ++report.schedule_added;
      charge();
    }
  }
  ++clock_;
  drain(report);
  return report;
}

ProactiveResampler::StepReport ProactiveResampler::idle_step() {
  if (clock_ >= horizon_) fail(Errc::HorizonExhausted, "clock " + std::to_string(clock_));
  seal();
  StepReport report;
  ++clock_;
  drain(report);
  return report;
}

std::uint64_t ProactiveResampler::load(MachineId x) const {
  if (x >= machine_alive_.size() || !machine_alive_[x]) fail(Errc::MachineMissing, std::to_string(x));
  return load_[x];
}

boost::multiprecision::cpp_rational ProactiveResampler::target(MachineId x) const {
  if (x >= machine_alive_.size() || !machine_alive_[x]) fail(Errc::MachineMissing, std::to_string(x));
  boost::multiprecision::cpp_rational sum = 0;
  for (const RoutineId r : by_machine_[x]) {
    if (died_at_[r] != kNever) continue;
    sum += boost::multiprecision::cpp_rational(1, live_[routines_[r].job].size());
  }
  return sum;
}

double ProactiveResampler::target_approx(MachineId x) const {
  if (x >= machine_alive_.size() || !machine_alive_[x]) fail(Errc::MachineMissing, std::to_string(x));
  double sum = 0.0;
  for (const RoutineId r : by_machine_[x]) {
    if (died_at_[r] == kNever) sum += 1.0 / static_cast<double>(live_[routines_[r].job].size());
  }
  return sum;
}

std::optional<MachineId> ProactiveResampler::max_load_machine() const {
  if (by_load_.empty()) return std::nullopt;
  return ~by_load_.begin()->second;
}

std::vector<std::uint64_t> ProactiveResampler::relevant_steps(std::uint64_t t, RoutineId r) const {
  if (r >= routines_.size()) fail(Errc::UnknownRoutine, std::to_string(r));
  const JobId u = routines_[r].job;
  std::vector<ScheduleEntry> window;
  for (const ScheduleEntry& e : entries_[u]) {
    if (e.time < t) window.push_back(e);
  }
  std::sort(window.begin(), window.end(),
            [](const ScheduleEntry& a, const ScheduleEntry& b) { return a.time > b.time; });

  // Walk events backwards; `oldest` is the minimum creation step among
  // entries strictly between the event and t.
  std::vector<std::uint64_t> out;
  std::uint64_t oldest = kNever;
  std::size_t next = 0;
  const auto& events = events_[u];
  for (auto it = events.rbegin(); it != events.rend(); ++it) {
    const std::uint64_t s = it->step;
    if (s >= t) continue;
    while (next < window.size() && window[next].time > s) {
      oldest = std::min(oldest, window[next].created);
      ++next;
    }
    if (oldest > s && died_at_[r] > s) out.push_back(s);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::optional<std::string> ProactiveResampler::check_invariants() const {
  std::vector<std::uint64_t> load(machine_alive_.size(), 0);
  std::size_t count = 0;
  for (JobId u = 0; u < live_.size(); ++u) {
    const RoutineId r = assigned_[u];
    if (r == kUnassigned) {
      if (!live_[u].empty() && sealed_) return "job " + std::to_string(u) + " unassigned";
      continue;
    }
    ++count;
    if (died_at_[r] != kNever) return "job " + std::to_string(u) + " holds a dead routine";
    if (routines_[r].job != u) return "job " + std::to_string(u) + " holds a foreign routine";
    for (const MachineId x : routines_[r].machines) ++load[x];
  }
  if (count != assigned_count_) return "assigned count";
  for (MachineId x = 0; x < machine_alive_.size(); ++x) {
    if (machine_alive_[x] && load[x] != load_[x]) return "load of machine " + std::to_string(x);
  }
  for (JobId u = 0; u < live_.size(); ++u) {
    for (std::uint32_t i = 0; i < live_[u].size(); ++i) {
      if (slot_[live_[u][i]] != i || died_at_[live_[u][i]] != kNever) return "live list of job " + std::to_string(u);
    }
  }
  return std::nullopt;
}

}  // namespace dynspan
