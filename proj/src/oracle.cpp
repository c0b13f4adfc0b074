#include "dynspan/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "dynspan/bitset_kernels.hpp"
#include "dynspan/error.hpp"
#include "dynspan/rng.hpp"

namespace dynspan {

namespace {

// Above this size the ball table is replaced by per-edge bidirectional search.
constexpr std::size_t kBallTableMaxVertices = 8192;

DynamicGraph spanner_graph(const DynamicGraph& g, std::span<const EdgeKey> h) {
  for (const EdgeKey& e : h) {
    if (!g.has_edge(e)) {
      fail(Errc::SpannerNotSubgraph,
           "(" + std::to_string(e.lo) + "," + std::to_string(e.hi) + ") not in graph");
    }
  }
  return DynamicGraph(g.vertex_count(), h);
}

std::uint32_t exact_distance(const DynamicGraph& h, EdgeKey e) {
  const auto cap = static_cast<std::uint32_t>(h.vertex_count());
  return bfs_dist(h, e.lo, e.hi, cap).value_or(kUnreachable);
}

void fold(StretchReport& report, EdgeKey e, std::uint32_t dist, std::uint32_t t) {
  ++report.checked;
  if (!report.worst_edge || dist > report.worst_dist) {
    report.worst_edge = e;
    report.worst_dist = dist;
  }
  if (dist > t) report.ok = false;
}

}  // namespace

BallTable::BallTable(const DynamicGraph& h, std::uint32_t max_radius)
    : words_((h.vertex_count() + 63) / 64), levels_(max_radius + 1) {
  const std::size_t n = h.vertex_count();
  levels_[0].assign(n * words_, 0);
  for (VertexId v = 0; v < n; ++v) levels_[0][v * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
  for (std::uint32_t r = 1; r <= max_radius; ++r) {
    levels_[r] = levels_[r - 1];
    for (VertexId v = 0; v < n; ++v) {
      std::span<std::uint64_t> row(levels_[r].data() + v * words_, words_);
      for (VertexId x : h.neighbors(v)) kernels::or_into(row, ball(r - 1, x));
    }
  }
}

bool BallTable::within(VertexId u, VertexId v, std::uint32_t d) const noexcept {
  return kernels::intersects(ball((d + 1) / 2, u), ball(d / 2, v));
}

StretchReport verify_stretch(const DynamicGraph& g, std::span<const EdgeKey> h, std::uint32_t t,
                             CheckMode mode) {
  const DynamicGraph hg = spanner_graph(g, h);
  StretchReport report;
  std::vector<EdgeKey> edges = g.edges();

  if (mode.kind == CheckMode::Kind::Sampled) {
    if (mode.count < edges.size()) {
      Rng rng(mode.seed);
      for (std::size_t i = 0; i < mode.count; ++i) {
        std::swap(edges[i], edges[i + uniform_below(rng, edges.size() - i)]);
      }
      edges.resize(mode.count);
      std::sort(edges.begin(), edges.end());
    }
  }

  if (mode.kind == CheckMode::Kind::Exact && g.vertex_count() <= kBallTableMaxVertices) {
    const BallTable balls(hg, (t + 1) / 2);
    for (const EdgeKey& e : edges) {
      std::uint32_t dist = kUnreachable;
      if (hg.has_edge(e)) {
        dist = 1;
      } else if (balls.within(e.lo, e.hi, t)) {
        dist = 2;
        while (!balls.within(e.lo, e.hi, dist)) ++dist;
      } else {
        dist = exact_distance(hg, e);
      }
      fold(report, e, dist, t);
    }
    return report;
  }

  DistanceProbe probe(hg.vertex_count());
  for (const EdgeKey& e : edges) {
    std::uint32_t dist;
    if (probe.within(hg, e.lo, e.hi, t)) {
      dist = bfs_dist(hg, e.lo, e.hi, t).value();
    } else {
      dist = exact_distance(hg, e);
    }
    fold(report, e, dist, t);
  }
  return report;
}

namespace {

// Shortest cycle closed within the BFS ball of radius max_depth around each
// root; returns the minimum found, or kUnreachable.
std::uint32_t bounded_girth(const DynamicGraph& h, std::uint32_t max_depth) {
  const std::size_t n = h.vertex_count();
  std::vector<std::uint32_t> dist(n, kUnreachable);
  std::vector<VertexId> parent(n, kNoVertex);
  std::vector<VertexId> touched;
  std::vector<VertexId> frontier;
  std::vector<VertexId> next;
  std::uint32_t best = kUnreachable;
  for (VertexId root = 0; root < n; ++root) {
    for (VertexId v : touched) {
      dist[v] = kUnreachable;
      parent[v] = kNoVertex;
    }
    touched.assign(1, root);
    dist[root] = 0;
    frontier.assign(1, root);
    for (std::uint32_t depth = 0; depth <= max_depth && !frontier.empty(); ++depth) {
      next.clear();
      for (VertexId x : frontier) {
        for (VertexId y : h.neighbors(x)) {
          if (y == parent[x]) continue;
          if (dist[y] != kUnreachable) {
            best = std::min(best, dist[x] + dist[y] + 1);
            continue;
          }
          dist[y] = depth + 1;
          parent[y] = x;
          touched.push_back(y);
          next.push_back(y);
        }
      }
      frontier.swap(next);
    }
  }
  return best;
}

}  // namespace

bool girth_at_least(std::size_t n, std::span<const EdgeKey> h, std::uint32_t g_min) {
  if (g_min <= 3) return true;
  const DynamicGraph hg(n, h);
  // A cycle of length L is closed while expanding depth floor((L - 1) / 2).
  return bounded_girth(hg, (g_min - 2) / 2) >= g_min;
}

std::optional<std::uint32_t> shortest_cycle(std::size_t n, std::span<const EdgeKey> h) {
  const DynamicGraph hg(n, h);
  const std::uint32_t g = bounded_girth(hg, static_cast<std::uint32_t>(n));
  if (g == kUnreachable) return std::nullopt;
  return g;
}

std::vector<EdgeKey> reference_greedy(const DynamicGraph& g, unsigned k,
                                      std::span<const EdgeKey> order) {
  if (k == 0) fail(Errc::BadArgs, "stretch parameter k must be >= 1");
  if (order.size() != g.edge_count()) {
    fail(Errc::OrderNotPermutation, "order has " + std::to_string(order.size()) +
                                        " edges, graph has " + std::to_string(g.edge_count()));
  }
  std::set<EdgeKey> seen;
  for (const EdgeKey& e : order) {
    if (!g.has_edge(e) || !seen.insert(e).second) {
      fail(Errc::OrderNotPermutation,
           "(" + std::to_string(e.lo) + "," + std::to_string(e.hi) + ") missing or repeated");
    }
  }
  DynamicGraph hg(g.vertex_count());
  std::vector<EdgeKey> kept;
  const std::uint32_t cap = 2 * k - 1;
  for (const EdgeKey& e : order) {
    if (!bfs_dist(hg, e.lo, e.hi, cap)) {
      hg.insert_edge(e);
      kept.push_back(e);
    }
  }
  return kept;
}

}  // namespace dynspan
