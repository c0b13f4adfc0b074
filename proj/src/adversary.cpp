#include "dynspan/adversary.hpp"

#include <algorithm>

#include "dynspan/error.hpp"

namespace dynspan {

std::optional<EdgeKey> random_edge(const DynamicGraph& g, Rng& rng) {
  if (g.empty()) return std::nullopt;
  // Pick one of the 2m edge endpoints uniformly.
  std::uint64_t k = uniform_below(rng, 2 * g.edge_count());
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    const auto& nb = g.neighbors(u);
    if (k < nb.size()) return EdgeKey::of(u, *nb.nth(k));
    k -= nb.size();
  }
  return std::nullopt;
}

std::optional<EdgeKey> random_non_edge(const DynamicGraph& g, Rng& rng) {
  const std::size_t n = g.vertex_count();
  if (n < 2 || g.complete()) return std::nullopt;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const auto u = static_cast<VertexId>(uniform_below(rng, n));
    const auto v = static_cast<VertexId>(uniform_below(rng, n));
    if (u == v) continue;
    const EdgeKey e = EdgeKey::of(u, v);
    if (!g.has_edge(e)) return e;
  }
  // Dense graph: pick among the explicit complement.
  const std::uint64_t missing = n * (n - 1) / 2 - g.edge_count();
  std::uint64_t k = uniform_below(rng, missing);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (g.neighbors(u).contains(v)) continue;
      if (k-- == 0) return EdgeKey{u, v};
    }
  }
  return std::nullopt;
}

DynamicGraph random_graph(std::size_t n, std::size_t m, Rng& rng) {
  if (n < 2 ? m > 0 : m > n * (n - 1) / 2) fail(Errc::BadArgs, "too many edges for n");
  DynamicGraph g(n);
  while (g.edge_count() < m) g.insert_edge(*random_non_edge(g, rng));
  return g;
}

namespace {

// Insert with probability p_insert when possible, otherwise delete `victim`.
template <class Pick>
UpdateEvent mixed_move(const DynamicGraph& g, double p_insert, Rng& rng, std::uint64_t seq,
                       Pick&& victim) {
  const bool want_insert = p_insert > 0.0 && uniform_unit(rng) < p_insert;
  if (want_insert || g.empty()) {
    if (const auto e = random_non_edge(g, rng)) return {seq, UpdateKind::Insert, *e};
  }
  if (!g.empty()) return {seq, UpdateKind::Delete, victim()};
  fail(Errc::Exhausted, "graph has neither edges nor non-edges");
}

}  // namespace

RandomOblivious::RandomOblivious(double p_insert, std::uint64_t budget, std::uint64_t seed)
    : p_insert_(p_insert), budget_(budget), rng_(seed) {}

std::optional<UpdateEvent> RandomOblivious::next(const AdversaryView& view) {
  if (issued_ == budget_) return std::nullopt;
  const DynamicGraph& g = *view.graph;
  UpdateEvent ev = mixed_move(g, p_insert_, rng_, issued_, [&] { return *random_edge(g, rng_); });
  ++issued_;
  return ev;
}

SpannerTargeting::SpannerTargeting(double p_insert, std::uint64_t budget, std::uint64_t seed)
    : p_insert_(p_insert), budget_(budget), rng_(seed) {}

std::optional<UpdateEvent> SpannerTargeting::next(const AdversaryView& view) {
  if (issued_ == budget_) return std::nullopt;
  const DynamicGraph& g = *view.graph;
  UpdateEvent ev = mixed_move(g, p_insert_, rng_, issued_, [&] {
    if (view.spanner.empty()) return *random_edge(g, rng_);
    return view.spanner[uniform_below(rng_, view.spanner.size())];
  });
  ++issued_;
  return ev;
}

WitnessHammer::WitnessHammer(double p_insert, std::uint64_t budget, std::uint64_t seed)
    : p_insert_(p_insert), budget_(budget), rng_(seed) {}

std::optional<UpdateEvent> WitnessHammer::next(const AdversaryView& view) {
  if (issued_ == budget_) return std::nullopt;
  const DynamicGraph& g = *view.graph;
  UpdateEvent ev = mixed_move(g, p_insert_, rng_, issued_, [&] {
    if (view.hottest_edge) {
      if (const auto e = view.hottest_edge()) return *e;
    }
    return g.edges().front();
  });
  ++issued_;
  return ev;
}

Replay::Replay(UpdateStream stream, std::size_t start) : stream_(std::move(stream)), pos_(start) {}

std::optional<UpdateEvent> Replay::next(const AdversaryView& view) {
  if (pos_ == stream_.events.size()) return std::nullopt;
  const UpdateEvent& ev = stream_.events[pos_];
  const bool present = view.graph->has_edge(ev.edge);
  if (present == (ev.kind == UpdateKind::Insert)) {
    fail(Errc::IllegalUpdate, "line " + std::to_string(stream_.lines[pos_]) + ": " +
                                  (present ? "edge already present" : "edge not present"));
  }
  ++pos_;
  return ev;
}

std::optional<MachineId> MaxLoadMachine::next(const ProactiveResampler& engine) {
  if (issued_ == budget_) return std::nullopt;
  const auto x = engine.max_load_machine();
  if (!x) fail(Errc::Exhausted, "no live machine");
  ++issued_;
  return x;
}

std::optional<MachineId> RandomMachine::next(const ProactiveResampler& engine) {
  if (issued_ == budget_) return std::nullopt;
  if (!primed_) {
    for (MachineId x = 0; x < engine.machine_count(); ++x) {
      if (engine.machine_alive(x)) live_.push_back(x);
    }
    primed_ = true;
  }
  if (live_.empty()) fail(Errc::Exhausted, "no live machine");
  const std::size_t i = uniform_below(rng_, live_.size());
  const MachineId x = live_[i];
  live_[i] = live_.back();
  live_.pop_back();
  ++issued_;
  return x;
}

}  // namespace dynspan
