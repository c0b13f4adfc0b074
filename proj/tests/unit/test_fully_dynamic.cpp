#include <doctest.h>

#include <algorithm>

#include "dynspan/adversary.hpp"
#include "dynspan/error.hpp"
#include "dynspan/fully_dynamic.hpp"
#include "dynspan/oracle.hpp"

using namespace dynspan;

TEST_CASE("level exponents") {
  // 16^1.5 = 64 = 2^6.
  CHECK(base_level_exponent(16, 2) == 6);
  // 10^1.5 ~ 31.6.
  CHECK(base_level_exponent(10, 2) == 4);
  // 16^(2/3) ~ 6.35; 16^(1/2) = 4.
  CHECK(planned_top_level(16, 3) == 3);
  CHECK(planned_top_level(16, 2) == 2);
  CHECK(planned_top_level(16, 1) == 0);
  CHECK(base_level_exponent(1, 2) == 0);
}

TEST_CASE("counter places edges") {
  // 17^1.5 ~ 70.1, l0 = 6; K17 has 136 >= 128 edges.
  FullyDynamicSpanner s(17, 2);
  REQUIRE(s.base_exponent() == 6);
  const auto first = s.insert({0, 1});
  CHECK(first.flipped_bit == 0);
  CHECK_FALSE(first.rebuilt_level);
  CHECK(s.level_of({0, 1}) == 0u);
  CHECK(s.in_spanner({0, 1}));
  CHECK_THROWS_AS(s.insert({0, 1}), Error);

  // Insertion number 2^7 flips bit 7 and merges everything into level 1.
  std::vector<EdgeKey> all{{0, 1}};
  for (VertexId u = 0; u < 17 && all.size() < 128; ++u) {
    for (VertexId v = u + 1; v < 17 && all.size() < 128; ++v) {
      if (EdgeKey{u, v} == EdgeKey{0, 1}) continue;
      const auto r = s.insert({u, v});
      all.push_back({u, v});
      if (all.size() < 128) CHECK_FALSE(r.rebuilt_level);
      if (all.size() == 128) {
        CHECK(r.flipped_bit == 7);
        CHECK(r.rebuilt_level == 1u);
        CHECK(r.rebuilt_size == 128);
      }
    }
  }
  REQUIRE(s.counter() == 128);
  CHECK(s.level_size(0) == 0);
  CHECK(s.level_size(1) == 128);
  CHECK_FALSE(s.check_invariants());
}

TEST_CASE("empty history gives an empty spanner") {
  FullyDynamicSpanner s(10, 2);
  CHECK(s.spanner().empty());
  CHECK(s.spanner_size() == 0);
}

TEST_CASE("deleting a base-level edge removes exactly that edge") {
  FullyDynamicSpanner s(8, 2);
  s.insert({0, 1});
  s.insert({2, 3});
  const auto before = s.spanner();
  CHECK(s.erase({0, 1}).empty());
  const auto after = s.spanner();
  CHECK(after.size() + 1 == before.size());
  CHECK_FALSE(s.in_spanner({0, 1}));
  CHECK_THROWS_AS(s.erase({0, 1}), Error);
}

TEST_CASE("level deletions match a standalone greedy fed the same history") {
  Rng rng(12);
  const std::size_t n = 16;
  // 16^(4/3) ~ 40.3, so l0 = 5 and insertion 64 rebuilds level 1.
  FullyDynamicSpanner s(n, 3);
  REQUIRE(s.base_exponent() == 5);
  DynamicGraph g(n);
  while (s.counter() < 64) {
    const auto e = *random_non_edge(g, rng);
    g.insert_edge(e);
    s.insert(e);
  }
  unsigned level = 0;
  for (unsigned i = 1; i < s.level_count(); ++i) {
    if (s.level_spanner(i) && s.level_size(i) > 0) level = i;
  }
  REQUIRE(level > 0);
  GreedySpanner shadow(s.level_spanner(level)->graph(), 3);
  REQUIRE(shadow.spanner_sequence() == s.level_spanner(level)->spanner_sequence());
  for (int i = 0; i < 25; ++i) {
    const auto seq = s.level_spanner(level)->spanner_sequence();
    if (seq.empty()) break;
    const EdgeKey victim = seq[uniform_below(rng, seq.size())];
    const auto added = s.erase(victim);
    CHECK(added == shadow.handle_delete(victim));
    CHECK(shadow.spanner_sequence() == s.level_spanner(level)->spanner_sequence());
  }
}

TEST_CASE("mixed updates keep the union a 3-spanner") {
  Rng rng(2);
  const std::size_t n = 32;
  FullyDynamicSpanner s(n, 2);
  DynamicGraph g(n);
  for (int step = 0; step < 2000; ++step) {
    const bool ins = g.empty() || uniform_unit(rng) < 0.6;
    if (ins) {
      const auto e = *random_non_edge(g, rng);
      g.insert_edge(e);
      s.insert(e);
    } else {
      const auto e = *random_edge(g, rng);
      g.delete_edge(e);
      s.erase(e);
    }
    REQUIRE(verify_stretch(g, s.spanner(), 3).ok);
    REQUIRE_FALSE(s.check_invariants());
    REQUIRE(s.spanner_size() == s.spanner().size());
  }
}

TEST_CASE("delete then re-insert may change level but stays a spanner") {
  Rng rng(6);
  const std::size_t n = 20;
  FullyDynamicSpanner s(n, 2);
  DynamicGraph g = random_graph(n, 100, rng);
  for (const EdgeKey& e : g.edges()) s.insert(e);
  for (int i = 0; i < 60; ++i) {
    const EdgeKey e = *random_edge(g, rng);
    s.erase(e);
    s.insert(e);
    REQUIRE(s.level_of(e).has_value());
    REQUIRE(verify_stretch(g, s.spanner(), 3).ok);
  }
}
