#include "dynspan/resample3.hpp"

#include <algorithm>
#include <cmath>

#include "dynspan/error.hpp"
#include "dynspan/rng.hpp"

namespace dynspan {

std::uint64_t default_phase_length(std::size_t n) {
  // ceil(n^1.5) = ceil(sqrt(n^3))
  const std::uint64_t cube = static_cast<std::uint64_t>(n) * n * n;
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(cube)));
  while (r * r < cube) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= cube) --r;
  return std::max<std::uint64_t>(r, 1);
}

Resample3Phase::Resample3Phase(std::size_t n, std::uint64_t seed, std::uint64_t phase_len,
                               OpCounter* ops)
    : n_(n),
      buckets_(n),
      phase_len_(phase_len),
      ops_(ops),
      graph_(n),
      base_(n),
      nbr_(n * buckets_.count()),
      partner_(n * buckets_.count(), kNoVertex),
      engine_(seed, phase_len, ops) {
  if (phase_len == 0) fail(Errc::BadArgs, "phase length must be positive");
}

Resample3Phase Resample3Phase::build(std::size_t n, std::span<const EdgeKey> edges,
                                     std::uint64_t seed, std::uint64_t phase_len, OpCounter* ops) {
  std::vector<EdgeKey> sorted(edges.begin(), edges.end());
  std::sort(sorted.begin(), sorted.end());
  Builder b(n, seed, phase_len, ops);
  std::size_t next = 0;
  b.step(UINT64_MAX, [&]() -> Builder::Item {
    if (next == sorted.size()) return {};
    return {Builder::Item::Kind::Edge, sorted[next++]};
  });
  return std::move(b).finish();
}

void Resample3Phase::ref(EdgeKey e) {
  charge();
  if (refs_[e]++ != 0) return;
  if (building_) {
    spanner_.insert(e);
    charge();
  } else {
    touched_.try_emplace(e, false);
  }
}

void Resample3Phase::unref(EdgeKey e) {
  charge();
  const auto it = refs_.find(e);
  if (--it->second != 0) return;
  refs_.erase(it);
  if (building_) {
    spanner_.erase(e);
    charge();
  } else {
    touched_.try_emplace(e, true);
  }
}

void Resample3Phase::sync_job(JobId u) {
  const RoutineId old = held_[u];
  const RoutineId now = engine_.assigned(u);
  if (old == now) return;
  const auto [a, b] = pair_of_job_[u];
  if (old != kUnassigned) {
    unref(EdgeKey::of(a, witness_of_[old]));
    unref(EdgeKey::of(b, witness_of_[old]));
  }
  if (now != kUnassigned) {
    ref(EdgeKey::of(a, witness_of_[now]));
    ref(EdgeKey::of(b, witness_of_[now]));
  }
  held_[u] = now;
}

void Resample3Phase::begin_update() {
  touched_.clear();
  last_ = {};
}

Resample3Phase::Changes Resample3Phase::finish_update() {
  for (const auto& [e, was] : touched_) {
    const bool now = refs_.contains(e);
    if (was == now) continue;
    charge();
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

Resample3Phase::Changes Resample3Phase::insert(EdgeKey e) {
  if (exhausted()) fail(Errc::PhaseExhausted, "phase absorbed " + std::to_string(steps_) + " updates");
  graph_.insert_edge(e);
  begin_update();
  buffer_.insert(e);
  charge(2);
  ref(e);
  ++steps_;
  return finish_update();
}

Resample3Phase::Changes Resample3Phase::erase(EdgeKey e) {
  if (exhausted()) fail(Errc::PhaseExhausted, "phase absorbed " + std::to_string(steps_) + " updates");
  graph_.delete_edge(e);
  begin_update();
  ++steps_;
  charge();

  if (buffer_.erase(e) != 0) {
    unref(e);
    const auto report = engine_.idle_step();
    for (const JobId u : report.resampled) sync_job(u);
    finish_update();
    last_.resamples = report.resampled.size();
    return last_;
  }

  const VertexId a = e.lo;
  const VertexId b = e.hi;
  // x stops being a common neighbor of `side` and every y adjacent to x in side's bucket.
  for (const VertexId side : {a, b}) {
    const VertexId x = e.other(side);
    for (const VertexId y : nbr_[slot(x, buckets_.of(side))]) {
      charge();
      if (y == side) continue;
      auto it = partnerships_.find(pair_key(side, y));
      it->second.erase(x);
      charge(2);
    }
  }
  base_.delete_edge(e);
  const std::uint32_t ba = buckets_.of(a);
  const std::uint32_t bb = buckets_.of(b);
  nbr_[slot(a, bb)].erase(b);
  nbr_[slot(b, ba)].erase(a);
  charge(2);

  if (ba == bb) {
    unref(e);
  } else {
    for (const auto& [x, y, i] : {std::tuple{a, b, bb}, std::tuple{b, a, ba}}) {
      charge();
      if (partner_[slot(x, i)] != y) continue;
      unref(e);
      const auto& nb = nbr_[slot(x, i)];
      partner_[slot(x, i)] = nb.empty() ? kNoVertex : *nb.begin();
      if (!nb.empty()) ref(EdgeKey::of(x, *nb.begin()));
    }
  }

  const MachineId m = machine_of_.at(e);
  const auto report = engine_.delete_machine(m);
  for (const JobId u : report.touched) sync_job(u);
  for (const JobId u : report.resampled) sync_job(u);
  finish_update();
  last_.resamples = report.resampled.size();
  last_.touched = report.touched.size();
  return last_;
}

VertexId Resample3Phase::witness(VertexId u, VertexId v) const {
  const auto it = job_of_.find(pair_key(u, v));
  if (it == job_of_.end()) return kNoVertex;
  const RoutineId r = held_[it->second];
  return r == kUnassigned ? kNoVertex : witness_of_[r];
}

std::uint64_t Resample3Phase::edge_load(EdgeKey e) const {
  const auto it = machine_of_.find(e);
  if (it == machine_of_.end() || !engine_.machine_alive(it->second)) return 0;
  return engine_.load(it->second);
}

std::optional<EdgeKey> Resample3Phase::max_load_edge() const {
  const auto m = engine_.max_load_machine();
  if (m && engine_.load(*m) > 0) return edge_of_[*m];
  for (VertexId u = 0; u < n_; ++u) {
    const auto& nb = graph_.neighbors(u);
    const auto it = nb.upper_bound(u);
    if (it != nb.end()) return EdgeKey{u, *it};
  }
  return std::nullopt;
}

std::optional<std::string> Resample3Phase::check_index() const {
  const std::uint32_t B = buckets_.count();
  std::vector<std::set<VertexId>> nbr(n_ * B);
  for (const EdgeKey& e : base_.edges()) {
    nbr[slot(e.lo, buckets_.of(e.hi))].insert(e.hi);
    nbr[slot(e.hi, buckets_.of(e.lo))].insert(e.lo);
    if (buffer_.contains(e)) return "edge both buffered and in base";
  }
  std::unordered_map<EdgeKey, std::uint32_t, EdgeKeyHash> refs;
  for (const EdgeKey& e : buffer_) ++refs[e];
  for (VertexId v = 0; v < n_; ++v) {
    for (std::uint32_t i = 0; i < B; ++i) {
      if (nbr[slot(v, i)] != nbr_[slot(v, i)]) return "bucket neighbors of " + std::to_string(v);
      if (i == buckets_.of(v)) {
        for (const VertexId y : nbr[slot(v, i)]) {
          if (y > v) ++refs[EdgeKey{v, y}];
        }
        continue;
      }
      const VertexId p = partner_[slot(v, i)];
      if (nbr[slot(v, i)].empty() != (p == kNoVertex)) return "null partner of " + std::to_string(v);
      if (p == kNoVertex) continue;
      if (!nbr[slot(v, i)].contains(p)) return "stale partner of " + std::to_string(v);
      ++refs[EdgeKey::of(v, p)];
    }
  }
  for (std::uint32_t i = 0; i < B; ++i) {
    const auto& members = buckets_.members(i);
    for (std::size_t x = 0; x < members.size(); ++x) {
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        const VertexId u = members[x];
        const VertexId v = members[y];
        std::set<VertexId> common;
        const auto& nu = base_.neighbors(u);
        const auto& nv = base_.neighbors(v);
        std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(),
                              std::inserter(common, common.end()));
        const auto it = partnerships_.find(pair_key(u, v));
        const bool stored = it != partnerships_.end() && !it->second.empty();
        if (stored != !common.empty() || (stored && it->second != common)) {
          return "partnership of " + std::to_string(u) + "," + std::to_string(v);
        }
        const VertexId w = witness(u, v);
        if (common.empty() != (w == kNoVertex)) {
          return "witness presence for " + std::to_string(u) + "," + std::to_string(v);
        }
        if (w == kNoVertex) continue;
        if (!common.contains(w)) return "dead witness for " + std::to_string(u) + "," + std::to_string(v);
        ++refs[EdgeKey::of(u, w)];
        ++refs[EdgeKey::of(v, w)];
      }
    }
  }
  if (refs != refs_) return "output reference counts";
  std::set<EdgeKey> spanner;
  for (const auto& [e, c] : refs) spanner.insert(e);
  if (spanner != spanner_) return "spanner set";
  for (const EdgeKey& e : spanner_) {
    if (!graph_.has_edge(e)) return "spanner edge not in graph";
  }
  if (auto bad = engine_.check_invariants()) return "engine: " + *bad;
  return std::nullopt;
}

Resample3Phase::Builder::Builder(std::size_t n, std::uint64_t seed, std::uint64_t phase_len,
                                 OpCounter* ops)
    : ops_(ops), phase_(new Resample3Phase(n, seed, phase_len, &scratch_)) {}

std::uint64_t Resample3Phase::Builder::work_bound(std::size_t n) {
  const std::uint64_t B = ceil_sqrt(n);
  const std::uint64_t pairs_per_center = B * (B - (B > 0 ? 1 : 0)) / 2;
  // Every candidate key is visited once, plus one skip per vertex.
  const std::uint64_t ingest = static_cast<std::uint64_t>(n) * (n - (n > 0 ? 1 : 0)) / 2 + n + 1;
  const std::uint64_t partnership = n * B * (1 + pairs_per_center) + 1;
  const std::uint64_t vertices = n * B + 1;
  const std::uint64_t jobs = B * pairs_per_center;
  const std::uint64_t routines = jobs + n * B * pairs_per_center + 1;
  const std::uint64_t initial = jobs + 1;
  return unit_cost() * (ingest + partnership + vertices + routines + initial);
}

void Resample3Phase::Builder::ingest(EdgeKey e) {
  if (stage_ != Stage::Ingest) fail(Errc::BadArgs, "ingest after seal");
  if (last_ingested_ && !(*last_ingested_ < e)) fail(Errc::BadArgs, "ingest out of order");
  last_ingested_ = e;
  Resample3Phase& p = *phase_;
  p.graph_.insert_edge(e);
  p.base_.insert_edge(e);
  const std::uint32_t ba = p.buckets_.of(e.lo);
  const std::uint32_t bb = p.buckets_.of(e.hi);
  p.nbr_[p.slot(e.lo, bb)].insert(e.hi);
  p.nbr_[p.slot(e.hi, ba)].insert(e.lo);
  const MachineId m = p.engine_.add_machine();
  p.machine_of_.emplace(e, m);
  p.edge_of_.push_back(e);
  p.charge(6);
  if (ba == bb) p.ref(e);
}

void Resample3Phase::Builder::seal_ingest() {
  if (stage_ == Stage::Ingest) stage_ = Stage::Partnerships;
}

void Resample3Phase::Builder::advance_center() {
  pair_open_ = false;
  if (++i_ == phase_->buckets_.count()) {
    i_ = 0;
    ++w_;
  }
}

void Resample3Phase::Builder::unit(const Source& source) {
  Resample3Phase& p = *phase_;
  switch (stage_) {
    case Stage::Ingest: {
      const Item item = source ? source() : Item{};
      if (item.kind == Item::Kind::Edge) {
        ingest(item.edge);
      } else if (item.kind == Item::Kind::End) {
        seal_ingest();
      }
      return;
    }
    case Stage::Partnerships: {
      if (w_ == p.n_) {
        stage_ = Stage::Vertices;
        return;
      }
      const auto& s = p.nbr_[p.slot(w_, i_)];
      p.charge();
      if (!pair_open_) {
        if (s.size() < 2) {
          advance_center();
          return;
        }
        a_ = s.begin();
        b_ = std::next(a_);
        pair_open_ = true;
        return;
      }
      p.partnerships_[pair_key(*a_, *b_)].insert(w_);
      p.charge(2);
      if (++b_ == s.end()) {
        ++a_;
        b_ = std::next(a_);
        if (b_ == s.end()) advance_center();
      }
      return;
    }
    case Stage::Vertices: {
      if (v_ == p.n_) {
        stage_ = Stage::Routines;
        job_it_ = p.partnerships_.cbegin();
        return;
      }
      const std::uint32_t B = p.buckets_.count();
      const VertexId v = v_;
      const std::uint32_t i = i_;
      if (++i_ == B) {
        i_ = 0;
        ++v_;
      }
      p.charge();
      if (i == p.buckets_.of(v)) return;
      const auto& nb = p.nbr_[p.slot(v, i)];
      if (nb.empty()) return;
      p.partner_[p.slot(v, i)] = *nb.begin();
      p.ref(EdgeKey::of(v, *nb.begin()));
      return;
    }
    case Stage::Routines: {
      if (job_it_ == p.partnerships_.cend()) {
        stage_ = Stage::Initial;
        return;
      }
      const auto u = static_cast<VertexId>(job_it_->first >> 32);
      const auto v = static_cast<VertexId>(job_it_->first & 0xffffffffu);
      if (!job_open_) {
        const JobId j = p.engine_.add_job();
        p.job_of_.emplace(job_it_->first, j);
        p.pair_of_job_.emplace_back(u, v);
        p.held_.push_back(kUnassigned);
        p.charge(2);
        wit_it_ = job_it_->second.cbegin();
        job_open_ = true;
        return;
      }
      const VertexId w = *wit_it_;
      const MachineId ms[2] = {p.machine_of_.at(EdgeKey::of(u, w)),
                               p.machine_of_.at(EdgeKey::of(v, w))};
      p.engine_.add_routine(static_cast<JobId>(p.pair_of_job_.size() - 1), ms);
      p.witness_of_.push_back(w);
      p.charge(2);
      if (++wit_it_ == job_it_->second.cend()) {
        ++job_it_;
        job_open_ = false;
      }
      return;
    }
    case Stage::Initial: {
      if (next_job_ == p.pair_of_job_.size()) {
        p.engine_.seal();
        p.building_ = false;
        stage_ = Stage::Done;
        return;
      }
      p.engine_.initialize(next_job_);
      p.sync_job(next_job_);
      ++next_job_;
      return;
    }
    case Stage::Done:
      return;
  }
}

bool Resample3Phase::Builder::step(std::uint64_t budget, const Source& source) {
  std::uint64_t spent = 0;
  while (stage_ != Stage::Done && spent < budget) {
    const std::uint64_t before = scratch_.pending();
    unit(source);
    const std::uint64_t cost = scratch_.pending() - before;
    spent += cost;
    max_unit_ = std::max(max_unit_, cost);
  }
  work_ += spent;
  scratch_.discard_step();
  if (ops_) ops_->charge(Module::Rebuild, spent);
  return done();
}

Resample3Phase Resample3Phase::Builder::finish() && {
  if (!done()) fail(Errc::BadArgs, "phase build not finished");
  phase_->ops_ = ops_;
  phase_->engine_.set_op_counter(ops_);
  return std::move(*phase_);
}

Resample3Spanner::Resample3Spanner(DynamicGraph g, std::uint64_t seed, std::uint64_t phase_len,
                                   OpCounter* ops)
    : seed_(seed),
      phase_len_(phase_len),
      ops_(ops),
      phase_(Resample3Phase::build(g.vertex_count(), g.edges(), mix_seed(seed, 0), phase_len, ops)) {}

template <class Fn>
Resample3Phase::Changes Resample3Spanner::update(Fn&& apply) {
  if (!phase_.exhausted()) return apply(phase_);
  const std::set<EdgeKey> before = phase_.spanner_set();
  ++index_;
  const std::vector<EdgeKey> edges = phase_.graph().edges();
  phase_ = Resample3Phase::build(phase_.graph().vertex_count(), edges, mix_seed(seed_, index_),
                                 phase_len_, ops_);
  Resample3Phase::Changes own = apply(phase_);
  Resample3Phase::Changes out;
  out.resamples = own.resamples;
  out.touched = own.touched;
  const auto& after = phase_.spanner_set();
  std::set_difference(after.begin(), after.end(), before.begin(), before.end(),
                      std::back_inserter(out.added));
  std::set_difference(before.begin(), before.end(), after.begin(), after.end(),
                      std::back_inserter(out.removed));
  return out;
}

Resample3Phase::Changes Resample3Spanner::insert(EdgeKey e) {
  return update([&](Resample3Phase& p) { return p.insert(e); });
}

Resample3Phase::Changes Resample3Spanner::erase(EdgeKey e) {
  return update([&](Resample3Phase& p) { return p.erase(e); });
}

}  // namespace dynspan
