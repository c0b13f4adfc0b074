#include <doctest.h>

#include <algorithm>

#include "dynspan/adversary.hpp"
#include "dynspan/error.hpp"
#include "dynspan/greedy_spanner.hpp"
#include "dynspan/oracle.hpp"

using namespace dynspan;

namespace {

// Order under which the maintained spanner must coincide with static greedy:
// the spanner in acceptance order, then every other edge ascending.
std::vector<EdgeKey> prefix_order(const GreedySpanner& s) {
  std::vector<EdgeKey> order = s.spanner_sequence();
  order.insert(order.end(), s.non_spanner().begin(), s.non_spanner().end());
  return order;
}

}  // namespace

TEST_CASE("build equals static greedy in ascending order") {
  Rng rng(1);
  for (unsigned k : {1u, 2u, 3u}) {
    const DynamicGraph g = random_graph(30, 150, rng);
    const GreedySpanner s(g, k);
    CHECK(s.spanner_sequence() == reference_greedy(g, k, g.edges()));
    CHECK(s.total_recourse() == s.spanner_size());
    CHECK(s.spanner_size() + s.non_spanner().size() == g.edge_count());
  }
}

TEST_CASE("deleting a non-spanner edge adds nothing") {
  DynamicGraph tri(3);
  tri.insert_edge({0, 1});
  tri.insert_edge({0, 2});
  tri.insert_edge({1, 2});
  GreedySpanner s(tri, 2);
  REQUIRE_FALSE(s.in_spanner({1, 2}));
  CHECK(s.handle_delete({1, 2}).empty());
  CHECK(s.recourse().last().added == 0);
  CHECK_THROWS_AS(s.handle_delete({1, 2}), Error);
}

TEST_CASE("losing a spanner edge brings back a covering edge") {
  DynamicGraph tri(3);
  tri.insert_edge({0, 1});
  tri.insert_edge({0, 2});
  tri.insert_edge({1, 2});
  GreedySpanner s(tri, 2);
  const auto added = s.handle_delete({0, 1});
  CHECK(added == std::vector<EdgeKey>{{1, 2}});
  CHECK(s.spanner_sequence() == std::vector<EdgeKey>{{0, 2}, {1, 2}});
}

TEST_CASE("full deletion run keeps stretch, girth and order equivalence") {
  Rng rng(4);
  for (unsigned k : {2u, 3u}) {
    const DynamicGraph g = random_graph(40, 260, rng);
    GreedySpanner s(g, k);
    std::vector<EdgeKey> victims = g.edges();
    for (std::size_t i = victims.size(); i > 1; --i) {
      std::swap(victims[i - 1], victims[uniform_below(rng, i)]);
    }
    for (const EdgeKey& e : victims) {
      const std::vector<EdgeKey> order = [&] {
        std::vector<EdgeKey> o;
        for (const EdgeKey& x : s.spanner_sequence()) {
          if (x != e) o.push_back(x);
        }
        for (const EdgeKey& x : s.non_spanner()) {
          if (x != e) o.push_back(x);
        }
        return o;
      }();
      s.handle_delete(e);
      REQUIRE(s.spanner_sequence() == reference_greedy(s.graph(), k, order));
      REQUIRE(verify_stretch(s.graph(), s.spanner_edges(), 2 * k - 1).ok);
      REQUIRE(girth_at_least(40, s.spanner_edges(), 2 * k + 1));
    }
    CHECK(s.graph().empty());
    CHECK(s.total_recourse() <= g.edge_count());
    CHECK(prefix_order(s).empty());
  }
}
