#include <doctest.h>

#include <algorithm>

#include "dynspan/adversary.hpp"
#include "dynspan/error.hpp"
#include "dynspan/oracle.hpp"
#include "dynspan/wrapped3.hpp"

using namespace dynspan;

namespace {

// Per-update constant of the declared budget; shared with the acceptance run.
constexpr std::uint64_t kBudgetC = 8;

UpdateEvent random_update(const DynamicGraph& g, Rng& rng) {
  if (!g.empty() && (g.complete() || uniform_unit(rng) < 0.5)) {
    return {0, UpdateKind::Delete, *random_edge(g, rng)};
  }
  return {0, UpdateKind::Insert, *random_non_edge(g, rng)};
}

void apply(Wrapped3Spanner& s, const UpdateEvent& ev) {
  if (ev.kind == UpdateKind::Insert) {
    s.insert(ev.edge);
  } else {
    s.erase(ev.edge);
  }
}

}  // namespace

TEST_CASE("period must allow three windows") {
  CHECK_THROWS_AS(Wrapped3Spanner(DynamicGraph(4), 1, 2), Error);
}

TEST_CASE("first third matches a plain phase of length 2L") {
  Rng rng(1);
  const std::size_t n = 36;
  const std::uint64_t L = 30;
  const DynamicGraph g0 = random_graph(n, 200, rng);
  Wrapped3Spanner w(g0, 5, L);
  auto plain = Resample3Phase::build(n, g0.edges(), mix_seed(5, 0), 2 * L);
  CHECK(w.spanner() == plain.spanner());
  DynamicGraph g = g0;
  for (std::uint64_t i = 0; i < L / 3; ++i) {
    const UpdateEvent ev = random_update(g, rng);
    g.apply(ev);
    apply(w, ev);
    if (ev.kind == UpdateKind::Insert) {
      plain.insert(ev.edge);
    } else {
      plain.erase(ev.edge);
    }
    REQUIRE(w.spanner() == plain.spanner());
  }
}

TEST_CASE("stretch and the per-update budget across several periods") {
  Rng rng(2);
  const std::size_t n = 49;
  const std::uint64_t L = 60;
  OpCounter ops;
  Wrapped3Spanner w(random_graph(n, 400, rng), 8, L, &ops);
  ops.discard_step();
  const std::uint64_t cap = Wrapped3Spanner::budget(n, L, kBudgetC);
  std::uint64_t worst = 0;
  DynamicGraph g = w.graph();
  for (std::uint64_t t = 0; t < 4 * L; ++t) {
    const UpdateEvent ev = random_update(g, rng);
    g.apply(ev);
    apply(w, ev);
    ops.end_step();
    worst = std::max(worst, ops.last_step());
    REQUIRE(std::includes(w.spanner_set().begin(), w.spanner_set().end(),
                          w.active().spanner_set().begin(), w.active().spanner_set().end()));
    REQUIRE(verify_stretch(g, w.spanner(), 3).ok);
  }
  CHECK(w.switches() == 3);
  MESSAGE("worst per-update ops " << worst << " of budget " << cap);
  CHECK(worst <= cap);
}

TEST_CASE("illegal updates leave the structure untouched") {
  Wrapped3Spanner w(DynamicGraph(9), 1, 3);
  w.insert({0, 1});
  CHECK_THROWS_AS(w.insert({0, 1}), Error);
  CHECK_THROWS_AS(w.erase({2, 3}), Error);
  CHECK(w.steps() == 1);
  w.erase({0, 1});
  w.insert({2, 3});
  w.insert({4, 5});
  CHECK(w.switches() == 1);
  CHECK(w.spanner() == std::vector<EdgeKey>{{2, 3}, {4, 5}});
}
