#include <doctest.h>

#include <sstream>

#include "dynspan/instrumentation.hpp"

using namespace dynspan;

TEST_CASE("op counter attributes work per module") {
  OpCounter ops;
  ops.charge(Module::Det3, 5);
  ops.charge(Module::Graph);
  CHECK(ops.pending() == 6);
  ops.end_step();
  CHECK(ops.last_step() == 6);
  CHECK(ops.last_step(Module::Det3) == 5);
  ops.charge(Module::Rebuild, 2);
  ops.discard_step();
  ops.charge(Module::Wrapper, 3);
  ops.end_step();
  CHECK(ops.steps() == 2);
  CHECK(ops.max_step() == 6);
  CHECK(ops.total() == 9);
  CHECK(ops.total(Module::Det3) + ops.total(Module::Graph) + ops.total(Module::Wrapper) ==
        ops.total());
  CHECK(ops.total(Module::Rebuild) == 0);
  CHECK(to_string(Module::Resample3) == "resample3");
}

TEST_CASE("recourse log totals") {
  RecourseLog log;
  CHECK(log.empty());
  log.record(3, 0);
  log.record(1, 2);
  log.record(0, 1);
  CHECK(log.entries().size() == 3);
  CHECK(log.total_added() == 4);
  CHECK(log.total_removed() == 3);
  CHECK(log.max_added() == 3);
  CHECK(log.last().removed == 1);
}

TEST_CASE("overhead measurement") {
  CHECK(measure_overhead({}, 1.0, 0.0) == 0.0);
  const std::vector<OverheadSample> samples{
      {1, 0, 4, 1.0}, {1, 1, 1, 1.0}, {2, 0, 10, 2.0}, {2, 1, 2, 0.5}};
  CHECK(samples[0].residual(2.0, 1.0) == doctest::Approx(1.0));
  CHECK(measure_overhead(samples, 2.0, 1.0) == doctest::Approx(0.5));
  CHECK(measure_overhead(samples, 10.0, 0.0) == 0.0);
  CHECK(measure_overhead(samples, 2.0, 1.0, {2}) == doctest::Approx(1.0));
  // Zero multipliers flag exactly the loaded samples.
  const std::vector<OverheadSample> mixed{{1, 0, 0, 1.0}, {1, 1, 3, 1.0}, {1, 2, 0, 0.0}};
  CHECK(measure_overhead(mixed, 0.0, 0.0) == doctest::Approx(1.0 / 3));
  const std::vector<OverheadSample> idle{{1, 0, 0, 2.0}, {2, 1, 0, 0.0}};
  CHECK(measure_overhead(idle, 0.0, 0.0) == 0.0);
}

TEST_CASE("metrics csv") {
  std::ostringstream out;
  const std::vector<MetricsRow> rows{{1, "delete", 2, 1, 30, 44, 3, true}};
  write_metrics_csv(out, rows);
  CHECK(out.str() == std::string(kMetricsHeader) + "\n1,delete,2,1,30,44,3,1\n");
}
