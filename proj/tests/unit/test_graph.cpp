#include <doctest.h>

#include "dynspan/adversary.hpp"
#include "dynspan/error.hpp"
#include "dynspan/graph.hpp"

using namespace dynspan;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::BadArgs;
}

}  // namespace

TEST_CASE("edge keys are canonical") {
  CHECK(EdgeKey::of(5, 2) == EdgeKey{2, 5});
  CHECK(EdgeKey::of(2, 5).other(2) == 5);
  CHECK(EdgeKey{1, 9} < EdgeKey{2, 3});
  CHECK(code_of([] { (void)EdgeKey::of(3, 3); }) == Errc::SelfLoop);
}

TEST_CASE("graph construction rejects bad edge lists") {
  const EdgeKey dup[] = {{0, 1}, {0, 1}};
  CHECK(code_of([&] { DynamicGraph g(3, dup); }) == Errc::DuplicateEdge);
  const EdgeKey loop[] = {{2, 2}};
  CHECK(code_of([&] { DynamicGraph g(3, loop); }) == Errc::SelfLoop);
  const EdgeKey far[] = {{0, 7}};
  CHECK(code_of([&] { DynamicGraph g(3, far); }) == Errc::VertexOutOfRange);
}

TEST_CASE("insert and delete keep adjacency symmetric") {
  DynamicGraph g(4);
  g.insert_edge({0, 1});
  g.insert_edge({1, 3});
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge({1, 3}));
  CHECK(g.degree(1) == 2);
  CHECK(code_of([&] { g.insert_edge({0, 1}); }) == Errc::EdgeExists);
  CHECK(code_of([&] { g.delete_edge({2, 3}); }) == Errc::EdgeMissing);
  g.apply({0, UpdateKind::Delete, {0, 1}});
  CHECK_FALSE(g.has_edge({0, 1}));
  CHECK(g.check_invariants());
  CHECK(g.serialize() == "N 4\n1 3\n");
}

TEST_CASE("complete graph detection") {
  DynamicGraph g(3);
  CHECK_FALSE(g.complete());
  g.insert_edge({0, 1});
  g.insert_edge({0, 2});
  g.insert_edge({1, 2});
  CHECK(g.complete());
  CHECK(DynamicGraph(1).complete());
}

TEST_CASE("bounded BFS on a path") {
  DynamicGraph g(5);
  for (VertexId v = 0; v + 1 < 5; ++v) g.insert_edge({v, v + 1});
  CHECK(bfs_dist(g, 0, 4, 4) == 4u);
  CHECK_FALSE(bfs_dist(g, 0, 4, 3).has_value());
  CHECK(bfs_dist(g, 2, 2, 0) == 0u);
}

TEST_CASE("bidirectional probe agrees with BFS") {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 30;
    const DynamicGraph g = random_graph(n, 20 + trial * 2, rng);
    DistanceProbe probe;
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = 0; v < n; ++v) {
        for (std::uint32_t cap : {0u, 1u, 2u, 3u, 5u}) {
          const bool want = bfs_dist(g, u, v, cap).has_value();
          REQUIRE(probe.within(g, u, v, cap) == want);
        }
      }
    }
  }
}
