#include <doctest.h>

#include "dynspan/adversary.hpp"
#include "dynspan/buckets.hpp"
#include "dynspan/det3.hpp"
#include "dynspan/error.hpp"
#include "dynspan/oracle.hpp"

using namespace dynspan;

namespace {

DynamicGraph from_edges(std::size_t n, std::initializer_list<EdgeKey> edges) {
  DynamicGraph g(n);
  for (const EdgeKey& e : edges) g.insert_edge(e);
  return g;
}

DynamicGraph complete_graph(std::size_t n) {
  DynamicGraph g(n);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) g.insert_edge({u, v});
  }
  return g;
}

}  // namespace

TEST_CASE("bucket arithmetic") {
  CHECK(ceil_sqrt(0) == 0);
  CHECK(ceil_sqrt(1) == 1);
  CHECK(ceil_sqrt(10) == 4);
  CHECK(ceil_sqrt(144) == 12);
  CHECK(ceil_sqrt(145) == 13);
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(144) == 8);
  CHECK(floor_log2(20) == 4);
  const BucketPartition p(10);
  CHECK(p.count() == 4);
  CHECK(p.members(1) == std::vector<VertexId>{1, 5, 9});
  CHECK(p.same(2, 6));
}

TEST_CASE("empty graph gives an empty spanner") {
  const Det3Spanner s(DynamicGraph(9));
  CHECK(s.spanner().empty());
  CHECK_FALSE(s.check_index());
}

TEST_CASE("K4 under round-robin buckets") {
  // Buckets {0,2}, {1,3}; every partner is vertex 0 or 1, so (2,3) is the
  // only edge no choice picks.
  const Det3Spanner s(complete_graph(4));
  CHECK(s.spanner() == std::vector<EdgeKey>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  CHECK(s.choices_are_minimal());
  CHECK_FALSE(s.check_index());
  CHECK(verify_stretch(s.graph(), s.spanner(), 3).ok);
}

TEST_CASE("star keeps every edge") {
  DynamicGraph g(10);
  for (VertexId v = 1; v < 10; ++v) g.insert_edge({0, v});
  const Det3Spanner s(g);
  CHECK(s.spanner() == g.edges());
}

TEST_CASE("path delete drops the lone partner edge") {
  // Buckets {0,2}, {1}; 2's only partner in bucket 1 is 1.
  Det3Spanner s(from_edges(3, {{0, 1}, {1, 2}}));
  REQUIRE(s.center(2, 1) == 1);
  const auto ch = s.erase({1, 2});
  CHECK(s.center(2, 1) == kNoVertex);
  CHECK(ch.added.empty());
  CHECK(ch.removed == std::vector<EdgeKey>{{1, 2}});
  CHECK(s.spanner() == std::vector<EdgeKey>{{0, 1}});
  CHECK_FALSE(s.check_index());
  CHECK_THROWS_AS(s.erase({1, 2}), Error);
}

TEST_CASE("insert rules") {
  Det3Spanner s(DynamicGraph(9));
  const auto first = s.insert({0, 1});
  CHECK(first.added == std::vector<EdgeKey>{{0, 1}});
  CHECK(first.removed.empty());
  CHECK(s.roles({0, 1}) != 0);
  CHECK_THROWS_AS(s.insert({0, 1}), Error);

  // Buckets of 9: {0,3,6}, {1,4,7}, {2,5,8}.
  s.insert({1, 3});
  s.insert({3, 4});
  CHECK_FALSE(s.check_index());
  CHECK(verify_stretch(s.graph(), s.spanner(), 3).ok);
  const auto ch = s.insert({0, 4});
  CHECK(ch.added == std::vector<EdgeKey>{{0, 4}});
  CHECK_FALSE(s.check_index());
  CHECK(verify_stretch(s.graph(), s.spanner(), 3).ok);

  // In K4 minus (2,3) every partner and pair choice already exists; the new
  // edge only joins sets that have a smaller chosen member.
  DynamicGraph g = complete_graph(4);
  g.delete_edge({2, 3});
  Det3Spanner t(g);
  const auto before = t.spanner();
  CHECK(t.insert({2, 3}).size() == 0);
  CHECK(t.spanner() == before);
  CHECK_FALSE(t.check_index());
}

TEST_CASE("non-spanner deletion changes nothing and costs O(log n)") {
  Rng rng(3);
  const std::size_t n = 144;
  OpCounter ops;
  Det3Spanner s(random_graph(n, 2000, rng), &ops);
  ops.discard_step();
  int checked = 0;
  for (const EdgeKey& e : s.graph().edges()) {
    if (s.in_spanner(e)) continue;
    const auto ch = s.erase(e);
    ops.end_step();
    CHECK(ch.size() == 0);
    CHECK(ops.last_step() <= 8u * ceil_log2(n));
    if (++checked == 50) break;
  }
  CHECK(checked == 50);
  CHECK_FALSE(s.check_index());
}

TEST_CASE("random updates keep stretch, size, change bound and indices") {
  Rng rng(8);
  const std::size_t n = 49;
  const std::size_t B = ceil_sqrt(n);
  Det3Spanner s(random_graph(n, 300, rng));
  CHECK(s.choices_are_minimal());
  for (int step = 0; step < 3000; ++step) {
    const bool ins = s.graph().empty() || uniform_unit(rng) < 0.5;
    Det3Spanner::Changes ch;
    if (ins) {
      const auto e = random_non_edge(s.graph(), rng);
      if (!e) continue;
      ch = s.insert(*e);
    } else {
      ch = s.erase(*random_edge(s.graph(), rng));
    }
    REQUIRE(ch.size() <= 2 * B + 2);
    REQUIRE(verify_stretch(s.graph(), s.spanner(), 3).ok);
    REQUIRE(s.spanner_size() <= 3 * n * B);
    if (step % 50 == 0) REQUIRE_FALSE(s.check_index());
  }
  CHECK_FALSE(s.check_index());
}

TEST_CASE("an injected role fault is caught by the index check") {
  // Buckets {0,2}, {1,3}; 1's bucket-0 partner moves from 0 to 2.
  Det3Spanner s(complete_graph(4));
  s.inject_fault();
  s.erase({0, 1});
  CHECK(s.center(1, 0) == 2);
  CHECK(s.check_index().has_value());
}
