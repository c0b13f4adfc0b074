#include "dynspan/graph.hpp"

#include <algorithm>
#include <sstream>

#include "dynspan/error.hpp"

namespace dynspan {

EdgeKey EdgeKey::of(VertexId a, VertexId b) {
  if (a == b) fail(Errc::SelfLoop, "self loop at vertex " + std::to_string(a));
  return a < b ? EdgeKey{a, b} : EdgeKey{b, a};
}

DynamicGraph::DynamicGraph(std::size_t n) : adj_(n) {}

DynamicGraph::DynamicGraph(std::size_t n, std::span<const EdgeKey> edges) : adj_(n) {
  for (const EdgeKey& e : edges) {
    if (e.lo == e.hi) fail(Errc::SelfLoop, "self loop at vertex " + std::to_string(e.lo));
    check_vertex(e.lo);
    check_vertex(e.hi);
    if (has_edge(e)) {
      fail(Errc::DuplicateEdge,
           "edge (" + std::to_string(e.lo) + "," + std::to_string(e.hi) + ") listed twice");
    }
    insert_edge(e);
  }
}

bool DynamicGraph::complete() const noexcept {
  const std::size_t n = adj_.size();
  return m_ == n * (n - (n > 0 ? 1 : 0)) / 2;
}

void DynamicGraph::check_vertex(VertexId v) const {
  if (v >= adj_.size()) {
    fail(Errc::VertexOutOfRange,
         "vertex " + std::to_string(v) + " not in [0," + std::to_string(adj_.size()) + ")");
  }
}

bool DynamicGraph::has_edge(EdgeKey e) const {
  if (e.hi >= adj_.size()) return false;
  const NeighborSet& a = adj_[e.lo];
  const NeighborSet& b = adj_[e.hi];
  return a.size() <= b.size() ? a.contains(e.hi) : b.contains(e.lo);
}

std::size_t DynamicGraph::max_degree() const noexcept {
  std::size_t best = 0;
  for (const auto& nb : adj_) best = std::max(best, nb.size());
  return best;
}

void DynamicGraph::insert_edge(EdgeKey e) {
  check_vertex(e.lo);
  check_vertex(e.hi);
  if (e.lo == e.hi) fail(Errc::SelfLoop, "self loop at vertex " + std::to_string(e.lo));
  if (!adj_[e.lo].insert(e.hi).second) {
    fail(Errc::EdgeExists, "(" + std::to_string(e.lo) + "," + std::to_string(e.hi) + ")");
  }
  adj_[e.hi].insert(e.lo);
  ++m_;
}

void DynamicGraph::delete_edge(EdgeKey e) {
  check_vertex(e.lo);
  check_vertex(e.hi);
  if (adj_[e.lo].erase(e.hi) == 0) {
    fail(Errc::EdgeMissing, "(" + std::to_string(e.lo) + "," + std::to_string(e.hi) + ")");
  }
  adj_[e.hi].erase(e.lo);
  --m_;
}

void DynamicGraph::apply(const UpdateEvent& ev) {
  if (ev.kind == UpdateKind::Insert) {
    insert_edge(ev.edge);
  } else {
    delete_edge(ev.edge);
  }
}

std::vector<EdgeKey> DynamicGraph::edges() const {
  std::vector<EdgeKey> out;
  out.reserve(m_);
  for (VertexId u = 0; u < adj_.size(); ++u) {
    for (auto it = adj_[u].upper_bound(u); it != adj_[u].end(); ++it) out.push_back({u, *it});
  }
  return out;
}

std::string DynamicGraph::serialize() const {
  std::ostringstream os;
  os << "N " << adj_.size() << '\n';
  for (const EdgeKey& e : edges()) os << e.lo << ' ' << e.hi << '\n';
  return os.str();
}

bool DynamicGraph::check_invariants() const {
  std::size_t degree_sum = 0;
  for (VertexId u = 0; u < adj_.size(); ++u) {
    degree_sum += adj_[u].size();
    for (VertexId v : adj_[u]) {
      if (v == u || v >= adj_.size() || !adj_[v].contains(u)) return false;
    }
  }
  return degree_sum == 2 * m_;
}

std::optional<std::uint32_t> bfs_dist(const DynamicGraph& g, VertexId u, VertexId v,
                                      std::uint32_t cap) {
  g.check_vertex(u);
  g.check_vertex(v);
  if (u == v) return 0;
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreachable);
  std::vector<VertexId> frontier{u};
  std::vector<VertexId> next;
  dist[u] = 0;
  for (std::uint32_t depth = 1; depth <= cap && !frontier.empty(); ++depth) {
    next.clear();
    for (VertexId x : frontier) {
      for (VertexId y : g.neighbors(x)) {
        if (dist[y] != kUnreachable) continue;
        if (y == v) return depth;
        dist[y] = depth;
        next.push_back(y);
      }
    }
    frontier.swap(next);
  }
  return std::nullopt;
}

DistanceProbe::DistanceProbe(std::size_t n) { reset(n); }

void DistanceProbe::reset(std::size_t n) {
  for (auto& m : mark_) m.assign(n, 0);
  epoch_ = 0;
}

void DistanceProbe::next_epoch() {
  if (++epoch_ == 0) {
    for (auto& m : mark_) std::fill(m.begin(), m.end(), 0);
    epoch_ = 1;
  }
}

bool DistanceProbe::within(const DynamicGraph& g, VertexId u, VertexId v, std::uint32_t cap) {
  if (mark_[0].size() != g.vertex_count()) reset(g.vertex_count());
  if (u == v) return true;
  if (cap == 0) return false;
  next_epoch();
  std::uint32_t radius[2] = {0, 0};
  front_[0].assign(1, u);
  front_[1].assign(1, v);
  mark_[0][u] = epoch_;
  mark_[1][v] = epoch_;

  // Invariant: radius[0] + radius[1] < cap, so any meeting found while
  // expanding closes a path of length at most cap.
  while (radius[0] + radius[1] < cap) {
    const int side = front_[0].size() <= front_[1].size() ? 0 : 1;
    const int other = 1 - side;
    if (front_[side].empty()) return false;
    next_.clear();
    for (VertexId x : front_[side]) {
      for (VertexId y : g.neighbors(x)) {
        if (mark_[other][y] == epoch_) return true;
        if (mark_[side][y] == epoch_) continue;
        mark_[side][y] = epoch_;
        next_.push_back(y);
      }
    }
    front_[side].swap(next_);
    ++radius[side];
  }
  return false;
}

}  // namespace dynspan
