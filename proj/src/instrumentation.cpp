#include "dynspan/instrumentation.hpp"

#include <algorithm>
#include <numeric>

namespace dynspan {

std::string_view to_string(Module m) noexcept {
  switch (m) {
    case Module::Graph: return "graph";
    case Module::Greedy: return "greedy";
    case Module::FullyDynamic: return "fully_dynamic";
    case Module::Det3: return "det3";
    case Module::JobMachine: return "job_machine";
    case Module::Resample3: return "resample3";
    case Module::Rebuild: return "rebuild";
    case Module::Wrapper: return "wrapper";
  }
  return "unknown";
}

std::uint64_t OpCounter::pending() const noexcept {
  return std::accumulate(step_.begin(), step_.end(), std::uint64_t{0});
}

void OpCounter::end_step() noexcept {
  last_ = pending();
  for (std::size_t i = 0; i < kModuleCount; ++i) {
    last_by_[i] = step_[i];
    total_[i] += step_[i];
  }
  step_.fill(0);
  max_ = std::max(max_, last_);
  ++steps_;
}

std::uint64_t OpCounter::total() const noexcept {
  return std::accumulate(total_.begin(), total_.end(), std::uint64_t{0});
}

void RecourseLog::record(std::uint64_t added, std::uint64_t removed) {
  entries_.push_back({added, removed});
  total_added_ += added;
  total_removed_ += removed;
  max_added_ = std::max(max_added_, added);
}

double measure_overhead(std::span<const OverheadSample> samples, double alpha, double beta,
                        SamplePolicy policy) {
  const std::uint64_t stride = std::max<std::uint64_t>(policy.stride, 1);
  std::uint64_t seen = 0;
  std::uint64_t violations = 0;
  for (std::size_t i = 0; i < samples.size(); i += stride) {
    ++seen;
    if (samples[i].residual(alpha, beta) > 0.0) ++violations;
  }
  return seen == 0 ? 0.0 : static_cast<double>(violations) / static_cast<double>(seen);
}

void write_metrics_csv(std::ostream& os, std::span<const MetricsRow> rows) {
  os << kMetricsHeader << '\n';
  for (const MetricsRow& r : rows) {
    os << r.step << ',' << r.event << ',' << r.recourse_add << ',' << r.recourse_del << ','
       << r.spanner_size << ',' << r.op_count << ',' << r.resamples << ','
       << (r.stretch_ok ? 1 : 0) << '\n';
  }
}

}  // namespace dynspan
