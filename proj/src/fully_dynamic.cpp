#include "dynspan/fully_dynamic.hpp"

#include <bit>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "dynspan/error.hpp"

namespace dynspan {

namespace mp = boost::multiprecision;

unsigned base_level_exponent(std::size_t n, unsigned k) {
  if (k == 0) fail(Errc::BadArgs, "k must be >= 1");
  // 2^l <= n^((k+1)/k)  <=>  2^(l*k) <= n^(k+1)
  const mp::cpp_int bound = mp::pow(mp::cpp_int(n), k + 1);
  unsigned l = 0;
  while (mp::pow(mp::cpp_int(2), (l + 1) * k) <= bound) ++l;
  return l;
}

unsigned planned_top_level(std::size_t n, unsigned k) {
  if (k == 0) fail(Errc::BadArgs, "k must be >= 1");
  // smallest j with 2^j >= n^((k-1)/k)  <=>  2^(j*k) >= n^(k-1)
  const mp::cpp_int bound = mp::pow(mp::cpp_int(n), k - 1);
  unsigned j = 0;
  while (mp::pow(mp::cpp_int(2), j * k) < bound) ++j;
  return j;
}

FullyDynamicSpanner::FullyDynamicSpanner(std::size_t n, unsigned k, OpCounter* ops)
    : n_(n),
      k_(k),
      ell0_(base_level_exponent(n, k)),
      top_(planned_top_level(n, k)),
      graph_(n),
      levels_(top_ + 1),
      ops_(ops) {}

FullyDynamicSpanner::InsertResult FullyDynamicSpanner::insert(EdgeKey e) {
  graph_.insert_edge(e);
  if (counter_ == UINT64_MAX) fail(Errc::CounterOverflow, "insertion counter exhausted");
  ++counter_;
  InsertResult result;
  // The bit that turns on is the highest bit flipped by the increment.
  result.flipped_bit = static_cast<unsigned>(std::countr_zero(counter_));
  if (ops_) ops_->charge(Module::FullyDynamic, 2);

  if (result.flipped_bit <= ell0_) {
    base_.insert(e);
    owner_.emplace(e, 0);
    ++spanner_size_;
    ++charged_;
    recourse_.record(1, 0);
    return result;
  }

  const unsigned h = result.flipped_bit - ell0_;
  if (h >= levels_.size()) levels_.resize(h + 1);

  // Old output restricted to the levels being merged.
  std::set<EdgeKey> merged_out(base_.begin(), base_.end());
  std::vector<EdgeKey> merged(base_.begin(), base_.end());
  base_.clear();
  for (unsigned i = 1; i < h; ++i) {
    Level& lvl = levels_[i];
    if (lvl.greedy) {
      for (const EdgeKey& s : lvl.greedy->spanner_sequence()) merged_out.insert(s);
    }
    merged.insert(merged.end(), lvl.edges.begin(), lvl.edges.end());
    lvl.edges.clear();
    lvl.greedy.reset();
  }
  // Levels are edge-disjoint, so the merged output is a plain sum.
  spanner_size_ -= merged_out.size();
  merged.push_back(e);

  Level& target = levels_[h];
  target.edges.insert(merged.begin(), merged.end());
  for (const EdgeKey& x : merged) owner_[x] = h;
  if (ops_) ops_->charge(Module::FullyDynamic, 2 * merged.size());

  std::vector<EdgeKey> sorted(target.edges.begin(), target.edges.end());
  target.greedy.emplace(DynamicGraph(n_, sorted), k_, ops_);
  spanner_size_ += target.greedy->spanner_size();
  charged_ += target.greedy->spanner_size();

  std::uint64_t added = 0;
  for (const EdgeKey& s : target.greedy->spanner_sequence()) {
    if (!merged_out.erase(s)) ++added;
  }
  recourse_.record(added, merged_out.size());

  result.rebuilt_level = h;
  result.rebuilt_size = target.edges.size();
  return result;
}

std::vector<EdgeKey> FullyDynamicSpanner::erase(EdgeKey e) {
  graph_.delete_edge(e);
  const auto it = owner_.find(e);
  const unsigned level = it->second;
  owner_.erase(it);
  if (ops_) ops_->charge(Module::FullyDynamic, 2);

  if (level == 0) {
    base_.erase(e);
    --spanner_size_;
    recourse_.record(0, 1);
    return {};
  }
  Level& lvl = levels_[level];
  lvl.edges.erase(e);
  const bool was_spanner = lvl.greedy->in_spanner(e);
  std::vector<EdgeKey> added = lvl.greedy->handle_delete(e);
  spanner_size_ += added.size();
  if (was_spanner) --spanner_size_;
  charged_ += added.size();
  recourse_.record(added.size(), was_spanner ? 1 : 0);
  return added;
}

std::vector<EdgeKey> FullyDynamicSpanner::spanner() const {
  std::set<EdgeKey> out(base_.begin(), base_.end());
  for (const Level& lvl : levels_) {
    if (lvl.greedy) out.insert(lvl.greedy->spanner_sequence().begin(), lvl.greedy->spanner_sequence().end());
  }
  return {out.begin(), out.end()};
}

std::size_t FullyDynamicSpanner::spanner_size() const noexcept { return spanner_size_; }

bool FullyDynamicSpanner::in_spanner(EdgeKey e) const {
  const auto level = level_of(e);
  if (!level) return false;
  if (*level == 0) return true;
  return levels_[*level].greedy->in_spanner(e);
}

std::size_t FullyDynamicSpanner::level_size(unsigned level) const {
  if (level == 0) return base_.size();
  return level < levels_.size() ? levels_[level].edges.size() : 0;
}

std::optional<unsigned> FullyDynamicSpanner::level_of(EdgeKey e) const {
  const auto it = owner_.find(e);
  if (it == owner_.end()) return std::nullopt;
  return it->second;
}

const GreedySpanner* FullyDynamicSpanner::level_spanner(unsigned level) const {
  if (level == 0 || level >= levels_.size() || !levels_[level].greedy) return nullptr;
  return &*levels_[level].greedy;
}

std::optional<std::string> FullyDynamicSpanner::check_invariants() const {
  std::size_t total = base_.size();
  if (base_.size() >= (std::uint64_t{1} << (ell0_ + 1))) {
    return "E_0 holds " + std::to_string(base_.size()) + " edges, capacity 2^(l0+1)-1";
  }
  for (const EdgeKey& e : base_) {
    if (!owner_.contains(e) || owner_.at(e) != 0) return "E_0 edge with wrong owner";
  }
  for (unsigned i = 1; i < levels_.size(); ++i) {
    const Level& lvl = levels_[i];
    total += lvl.edges.size();
    if (ell0_ + i < 64 && lvl.edges.size() > (std::uint64_t{1} << (ell0_ + i))) {
      return "level " + std::to_string(i) + " exceeds capacity 2^(l0+i)";
    }
    if (!lvl.edges.empty() && !lvl.greedy) return "level " + std::to_string(i) + " has no spanner";
    for (const EdgeKey& e : lvl.edges) {
      if (!owner_.contains(e) || owner_.at(e) != i) return "level edge with wrong owner";
    }
    if (lvl.greedy && lvl.greedy->graph().edge_count() != lvl.edges.size()) {
      return "level " + std::to_string(i) + " spanner graph out of sync";
    }
  }
  if (total != graph_.edge_count() || owner_.size() != total) return "levels do not partition E";
  return std::nullopt;
}

}  // namespace dynspan
