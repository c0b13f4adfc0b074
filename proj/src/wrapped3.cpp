#include "dynspan/wrapped3.hpp"

#include <algorithm>

#include "dynspan/buckets.hpp"
#include "dynspan/error.hpp"
#include "dynspan/rng.hpp"

namespace dynspan {

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

}  // namespace

std::uint64_t Wrapped3Spanner::rebuild_chunk(std::size_t n, std::uint64_t period) {
  return ceil_div(Resample3Phase::Builder::work_bound(n), std::max<std::uint64_t>(period / 3, 1)) +
         Resample3Phase::Builder::unit_cost();
}

std::uint64_t Wrapped3Spanner::budget(std::size_t n, std::uint64_t period, std::uint64_t c) {
  return c * ceil_sqrt(n) * std::max<std::uint32_t>(ceil_log2(n), 1) + rebuild_chunk(n, period);
}

Wrapped3Spanner::Wrapped3Spanner(DynamicGraph g, std::uint64_t seed, std::uint64_t period,
                                 OpCounter* ops)
    : seed_(seed), period_(period), third_(period / 3), ops_(ops), graph_(std::move(g)) {
  if (period < 3) fail(Errc::BadArgs, "period must be at least 3");
  active_ = std::make_unique<Resample3Phase>(Resample3Phase::build(
      graph_.vertex_count(), graph_.edges(), mix_seed(seed_, 0), 2 * period_, ops_));
  output_ = active_->spanner_set();
}

void Wrapped3Spanner::start_period() {
  if (steps_ > 0) {
    if (!next_ || !pending_.empty()) fail(Errc::PhaseExhausted, "next instance not ready");
    old_ = std::move(active_);
    active_ = std::move(next_);
    ++switches_;
    discard_it_ = old_->spanner_set().begin();
    discard_chunk_ = std::max<std::uint64_t>(ceil_div(old_->spanner_size(), third_), 1);
  }
  builder_ = std::make_unique<Resample3Phase::Builder>(
      graph_.vertex_count(), mix_seed(seed_, switches_ + 1), 2 * period_, ops_);
  toggled_.clear();
  cursor_u_ = 0;
  cursor_v_.reset();
  pending_.clear();
  feeding_ = false;
  fed_all_ = false;
}

Resample3Phase::Builder::Item Wrapped3Spanner::snapshot_next() {
  using Item = Resample3Phase::Builder::Item;
  OpCounter& work = builder_->work_counter();
  work.charge(Module::Wrapper, 3);
  const VertexId u = cursor_u_;
  if (u >= graph_.vertex_count()) return {};
  const VertexId after = cursor_v_.value_or(u);
  std::optional<EdgeKey> cand;
  const auto& nb = graph_.neighbors(u);
  if (const auto it = nb.upper_bound(after); it != nb.end()) cand = EdgeKey{u, *it};
  if (const auto it = toggled_.upper_bound(EdgeKey{u, after});
      it != toggled_.end() && it->first.lo == u && (!cand || it->first < *cand)) {
    cand = it->first;
  }
  if (!cand) {
    ++cursor_u_;
    cursor_v_.reset();
    return {Item::Kind::Skip, {}};
  }
  cursor_v_ = cand->hi;
  const auto t = toggled_.find(*cand);
  const bool member = t == toggled_.end() ? true : t->second;
  return {member ? Item::Kind::Edge : Item::Kind::Skip, *cand};
}

bool Wrapped3Spanner::fed(EdgeKey e) const {
  if (!next_ || !next_->in_spanner(e)) return false;
  return fed_all_ || (feeding_ && e < *feed_it_);
}

bool Wrapped3Spanner::old_remaining(EdgeKey e) const {
  if (!old_ || !old_->in_spanner(e)) return false;
  return discard_it_ != old_->spanner_set().end() && !(e < *discard_it_);
}

void Wrapped3Spanner::touch(EdgeKey e) {
  charge(2);
  const bool want = graph_.has_edge(e) && (active_->in_spanner(e) || fed(e) || old_remaining(e));
  const bool have = output_.contains(e);
  if (want == have) return;
  touched_.try_emplace(e, have);
  if (want) {
    output_.insert(e);
  } else {
    output_.erase(e);
  }
}

void Wrapped3Spanner::background(std::uint64_t r) {
  if (r < third_) {
    if (builder_) {
      const std::uint64_t chunk = rebuild_chunk(graph_.vertex_count(), period_) -
                                  Resample3Phase::Builder::unit_cost();
      // The last step of the window completes the build whatever is left.
      const std::uint64_t allowance = r + 1 == third_ ? UINT64_MAX : chunk;
      if (builder_->step(allowance, [this] { return snapshot_next(); })) {
        next_ = std::make_unique<Resample3Phase>(std::move(*builder_).finish());
        builder_.reset();
        toggled_.clear();
      }
    }
    if (old_) {
      const auto end = old_->spanner_set().end();
      const std::uint64_t quota = r + 1 == third_ ? UINT64_MAX : discard_chunk_;
      for (std::uint64_t k = 0; k < quota && discard_it_ != end; ++k) {
        const EdgeKey e = *discard_it_;
        ++discard_it_;
        touch(e);
      }
      if (discard_it_ == end) old_.reset();
    }
    return;
  }
  if (r < 2 * third_) {
    if (!feeding_ && !fed_all_) {
      feeding_ = true;
      feed_it_ = next_->spanner_set().begin();
      feed_chunk_ = std::max<std::uint64_t>(ceil_div(next_->spanner_size(), third_), 1);
    }
    const auto end = next_->spanner_set().end();
    const std::uint64_t quota = r + 1 == 2 * third_ ? UINT64_MAX : feed_chunk_;
    for (std::uint64_t k = 0; k < quota && feed_it_ != end; ++k) {
      const EdgeKey e = *feed_it_;
      ++feed_it_;
      touch(e);
    }
    if (feed_it_ == end) {
      feeding_ = false;
      fed_all_ = true;
    }
    return;
  }
  for (int k = 0; k < 3 && !pending_.empty(); ++k) {
    const UpdateEvent ev = pending_.front();
    pending_.pop_front();
    charge();
    const Resample3Phase::Changes ch =
        ev.kind == UpdateKind::Insert ? next_->insert(ev.edge) : next_->erase(ev.edge);
    for (const EdgeKey& x : ch.added) touch(x);
    for (const EdgeKey& x : ch.removed) touch(x);
    touch(ev.edge);
  }
}

template <class Fn>
Resample3Phase::Changes Wrapped3Spanner::update(EdgeKey e, bool insert, Fn&& apply) {
  if (insert) {
    graph_.insert_edge(e);
  } else {
    graph_.delete_edge(e);
  }
  const std::uint64_t r = steps_ % period_;
  if (r == 0) start_period();
  touched_.clear();
  if (builder_) {
    toggled_.try_emplace(e, !insert);
    charge();
  }
  Resample3Phase::Changes own = apply(*active_);
  for (const EdgeKey& x : own.added) touch(x);
  for (const EdgeKey& x : own.removed) touch(x);
  touch(e);
  pending_.push_back({steps_, insert ? UpdateKind::Insert : UpdateKind::Delete, e});
  background(r);
  ++steps_;

  Resample3Phase::Changes out;
  out.resamples = own.resamples;
  out.touched = own.touched;
  for (const auto& [x, was] : touched_) {
    if (output_.contains(x) == was) continue;
    (was ? out.removed : out.added).push_back(x);
  }
  std::sort(out.added.begin(), out.added.end());
  std::sort(out.removed.begin(), out.removed.end());
  touched_.clear();
  return out;
}

Resample3Phase::Changes Wrapped3Spanner::insert(EdgeKey e) {
  return update(e, true, [&](Resample3Phase& p) { return p.insert(e); });
}

Resample3Phase::Changes Wrapped3Spanner::erase(EdgeKey e) {
  return update(e, false, [&](Resample3Phase& p) { return p.erase(e); });
}

}  // namespace dynspan
