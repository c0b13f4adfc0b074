#include "dynspan/det3.hpp"

#include <algorithm>

#include "dynspan/error.hpp"

namespace dynspan {

Det3Spanner::Det3Spanner(DynamicGraph g, OpCounter* ops)
    : graph_(std::move(g)), buckets_(graph_.vertex_count()), ops_(ops) {
  const std::size_t n = graph_.vertex_count();
  const std::uint32_t B = buckets_.count();
  cross_.resize(n * B);
  center_.assign(n * B, kNoVertex);
  cluster_.resize(n);
  begin_update();

  const std::vector<EdgeKey> edges = graph_.edges();
  for (const EdgeKey& e : edges) {
    cross_[slot(e.lo, buckets_.of(e.hi))].insert(e.hi);
    cross_[slot(e.hi, buckets_.of(e.lo))].insert(e.lo);
    charge(2);
  }
  for (VertexId v = 0; v < n; ++v) {
    for (std::uint32_t i = 0; i < B; ++i) {
      if (i == buckets_.of(v)) {
        center_[slot(v, i)] = v;
        continue;
      }
      const auto& nb = cross_[slot(v, i)];
      if (nb.empty()) continue;
      const VertexId c = *nb.begin();
      center_[slot(v, i)] = c;
      cluster_[c].insert(v);
      set_role(EdgeKey::of(v, c), partner_bit(v, EdgeKey::of(v, c)), true);
      charge(2);
    }
  }
  for (const EdgeKey& e : edges) {
    for (const VertexId a : {e.lo, e.hi}) {
      const VertexId x = e.other(a);
      const VertexId t = target(a, x);
      if (t != a) {
        pairs_[pair_key(a, t)].members.insert(x);
        charge(2);
      }
    }
  }
  for (auto& [key, ps] : pairs_) {
    const auto u = static_cast<VertexId>(key >> 32);
    ps.chosen = *ps.members.begin();
    const EdgeKey e = EdgeKey::of(u, ps.chosen);
    set_role(e, cluster_bit(u, e), true);
  }
  finish_update();
  last_ = {};
}

VertexId Det3Spanner::target(VertexId a, VertexId x) const {
  const std::uint32_t i = buckets_.of(a);
  if (buckets_.of(x) == i) return x;
  return center_[slot(x, i)];
}

std::uint8_t Det3Spanner::roles(EdgeKey e) const {
  const auto it = roles_.find(e);
  return it == roles_.end() ? 0 : it->second;
}

VertexId Det3Spanner::chosen(VertexId u, VertexId t) const {
  const auto it = pairs_.find(pair_key(u, t));
  return it == pairs_.end() ? kNoVertex : it->second.chosen;
}

void Det3Spanner::set_role(EdgeKey e, std::uint8_t bit, bool on) {
  charge();
  auto it = roles_.find(e);
  const std::uint8_t before = it == roles_.end() ? 0 : it->second;
  const std::uint8_t after = on ? (before | bit) : (before & ~bit);
  if (before == after) return;
  touched_.try_emplace(e, before != 0);
  if (after == 0) {
    roles_.erase(it);
  } else if (it == roles_.end()) {
    roles_.emplace(e, after);
  } else {
    it->second = after;
  }
}

void Det3Spanner::pair_insert(VertexId u, VertexId t, VertexId x) {
  PairSet& ps = pairs_[pair_key(u, t)];
  ps.members.insert(x);
  charge(2);
  if (ps.chosen == kNoVertex) {
    // Unique member: the new edge is the only way into C+(t).
    ps.chosen = x;
    const EdgeKey e = EdgeKey::of(u, x);
    set_role(e, cluster_bit(u, e), true);
  }
}

void Det3Spanner::pair_erase(VertexId u, VertexId t, VertexId x) {
  const auto it = pairs_.find(pair_key(u, t));
  charge(2);
  PairSet& ps = it->second;
  ps.members.erase(x);
  if (ps.chosen != x) return;
  const EdgeKey gone = EdgeKey::of(u, x);
  set_role(gone, cluster_bit(u, gone), false);
  if (ps.members.empty()) {
    pairs_.erase(it);
    return;
  }
  ps.chosen = *ps.members.begin();
  charge();
  const EdgeKey e = EdgeKey::of(u, ps.chosen);
  set_role(e, cluster_bit(u, e), true);
}

void Det3Spanner::change_center(VertexId x, std::uint32_t i, VertexId next) {
  const VertexId old = center_[slot(x, i)];
  charge();
  if (old == next) return;
  // Every edge from bucket i to x changes cluster.
  for (const VertexId w : cross_[slot(x, i)]) {
    charge();
    if (w != old && old != kNoVertex) pair_erase(w, old, x);
    if (w != next && next != kNoVertex) pair_insert(w, next, x);
  }
  if (old != kNoVertex) {
    cluster_[old].erase(x);
    charge();
    const EdgeKey e = EdgeKey::of(x, old);
    set_role(e, partner_bit(x, e), false);
  }
  center_[slot(x, i)] = next;
  if (next != kNoVertex) {
    cluster_[next].insert(x);
    charge();
    const EdgeKey e = EdgeKey::of(x, next);
    if (fault_armed_ && old != kNoVertex) {
      fault_armed_ = false;
    } else {
      set_role(e, partner_bit(x, e), true);
    }
  }
}

void Det3Spanner::begin_update() {
  touched_.clear();
  last_ = {};
}

Det3Spanner::Changes Det3Spanner::finish_update() {
  for (const auto& [e, was] : touched_) {
    const bool now = roles_.contains(e);
    if (was == now) continue;
    if (now) {
      spanner_.insert(e);
      last_.added.push_back(e);
    } else {
      spanner_.erase(e);
      last_.removed.push_back(e);
    }
  }
  std::sort(last_.added.begin(), last_.added.end());
  std::sort(last_.removed.begin(), last_.removed.end());
  touched_.clear();
  return last_;
}

Det3Spanner::Changes Det3Spanner::insert(EdgeKey e) {
  graph_.insert_edge(e);
  begin_update();
  const VertexId a = e.lo;
  const VertexId b = e.hi;
  const std::uint32_t ba = buckets_.of(a);
  const std::uint32_t bb = buckets_.of(b);
  cross_[slot(a, bb)].insert(b);
  cross_[slot(b, ba)].insert(a);
  charge(2);
  if (ba != bb) {
    if (center_[slot(a, bb)] == kNoVertex) change_center(a, bb, b);
    if (center_[slot(b, ba)] == kNoVertex) change_center(b, ba, a);
  }
  for (const VertexId side : {a, b}) {
    const VertexId x = e.other(side);
    const VertexId t = target(side, x);
    if (t != side) pair_insert(side, t, x);
  }
  return finish_update();
}

Det3Spanner::Changes Det3Spanner::erase(EdgeKey e) {
  if (!graph_.has_edge(e)) {
    fail(Errc::EdgeMissing, "(" + std::to_string(e.lo) + "," + std::to_string(e.hi) + ")");
  }
  begin_update();
  const VertexId a = e.lo;
  const VertexId b = e.hi;
  for (const VertexId side : {a, b}) {
    const VertexId x = e.other(side);
    const VertexId t = target(side, x);
    if (t != side) pair_erase(side, t, x);
  }
  graph_.delete_edge(e);
  const std::uint32_t ba = buckets_.of(a);
  const std::uint32_t bb = buckets_.of(b);
  cross_[slot(a, bb)].erase(b);
  cross_[slot(b, ba)].erase(a);
  charge(2);
  if (ba != bb) {
    for (const auto& [x, y, i] : {std::tuple{a, b, bb}, std::tuple{b, a, ba}}) {
      if (center_[slot(x, i)] != y) continue;
      const auto& nb = cross_[slot(x, i)];
      charge();
      change_center(x, i, nb.empty() ? kNoVertex : *nb.begin());
    }
  }
  return finish_update();
}

std::optional<std::string> Det3Spanner::check_index() const {
  const std::size_t n = graph_.vertex_count();
  const std::uint32_t B = buckets_.count();
  auto tag = [](VertexId v, std::uint32_t i) {
    return "(" + std::to_string(v) + "," + std::to_string(i) + ")";
  };

  std::vector<std::set<VertexId>> cross(n * B);
  for (const EdgeKey& e : graph_.edges()) {
    cross[slot(e.lo, buckets_.of(e.hi))].insert(e.hi);
    cross[slot(e.hi, buckets_.of(e.lo))].insert(e.lo);
  }
  std::vector<std::set<VertexId>> cluster(n);
  std::unordered_map<EdgeKey, std::uint8_t, EdgeKeyHash> roles;
  for (VertexId v = 0; v < n; ++v) {
    for (std::uint32_t i = 0; i < B; ++i) {
      if (cross[slot(v, i)] != cross_[slot(v, i)]) return "cross set " + tag(v, i);
      const VertexId c = center_[slot(v, i)];
      if (i == buckets_.of(v)) {
        if (c != v) return "own-bucket center " + tag(v, i);
        continue;
      }
      if (cross[slot(v, i)].empty() != (c == kNoVertex)) return "null center " + tag(v, i);
      if (c == kNoVertex) continue;
      if (!cross[slot(v, i)].contains(c)) return "center not adjacent " + tag(v, i);
      cluster[c].insert(v);
      const EdgeKey e = EdgeKey::of(v, c);
      roles[e] |= partner_bit(v, e);
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    if (cluster[v] != cluster_[v]) return "cluster of " + std::to_string(v);
  }

  std::unordered_map<std::uint64_t, std::set<VertexId>> pairs;
  for (const EdgeKey& e : graph_.edges()) {
    for (const VertexId a : {e.lo, e.hi}) {
      const VertexId x = e.other(a);
      const VertexId t = target(a, x);
      if (t != a) pairs[pair_key(a, t)].insert(x);
    }
  }
  if (pairs.size() != pairs_.size()) return "pair set count";
  for (const auto& [key, members] : pairs) {
    const auto it = pairs_.find(key);
    const std::string name = tag(static_cast<VertexId>(key >> 32), static_cast<std::uint32_t>(key));
    if (it == pairs_.end() || it->second.members != members) return "pair set " + name;
    if (!members.contains(it->second.chosen)) return "pair choice " + name;
    const auto u = static_cast<VertexId>(key >> 32);
    const EdgeKey e = EdgeKey::of(u, it->second.chosen);
    roles[e] |= cluster_bit(u, e);
  }
  if (roles != roles_) {
    for (const EdgeKey& e : graph_.edges()) {
      const auto want = roles.find(e);
      const auto have = roles_.find(e);
      const std::uint8_t a = want == roles.end() ? 0 : want->second;
      const std::uint8_t b = have == roles_.end() ? 0 : have->second;
      if (a != b) {
        return "role tags of edge (" + std::to_string(e.lo) + "," + std::to_string(e.hi) + ")";
      }
    }
    return "role tags";
  }
  std::set<EdgeKey> spanner;
  for (const auto& [e, r] : roles) spanner.insert(e);
  if (spanner != spanner_) return "spanner set";
  return std::nullopt;
}

bool Det3Spanner::choices_are_minimal() const {
  const std::size_t n = graph_.vertex_count();
  for (VertexId v = 0; v < n; ++v) {
    for (std::uint32_t i = 0; i < buckets_.count(); ++i) {
      if (i == buckets_.of(v)) continue;
      const auto& nb = cross_[slot(v, i)];
      if (!nb.empty() && center_[slot(v, i)] != *nb.begin()) return false;
    }
  }
  for (const auto& [key, ps] : pairs_) {
    if (ps.chosen != *ps.members.begin()) return false;
  }
  return true;
}

}  // namespace dynspan
