#include "dynspan/greedy_spanner.hpp"

#include <algorithm>

#include "dynspan/error.hpp"

namespace dynspan {

GreedySpanner::GreedySpanner(DynamicGraph g, unsigned k, OpCounter* ops)
    : k_(k),
      graph_(std::move(g)),
      spanner_(graph_.vertex_count()),
      probe_(graph_.vertex_count()),
      ops_(ops) {
  if (k_ == 0) fail(Errc::BadArgs, "stretch parameter k must be >= 1");
  for (const EdgeKey& e : graph_.edges()) {
    if (spanner_within(e)) {
      non_spanner_.insert(non_spanner_.end(), e);
    } else {
      accept(e);
    }
  }
  recourse_.record(sequence_.size(), 0);
}

bool GreedySpanner::spanner_within(EdgeKey e) {
  if (ops_) ops_->charge(Module::Greedy);
  return probe_.within(spanner_, e.lo, e.hi, 2 * k_ - 1);
}

void GreedySpanner::accept(EdgeKey e) {
  spanner_.insert_edge(e);
  sequence_.push_back(e);
  if (ops_) ops_->charge(Module::Greedy, 2);
}

std::vector<EdgeKey> GreedySpanner::handle_delete(EdgeKey e) {
  graph_.delete_edge(e);
  if (ops_) ops_->charge(Module::Greedy);
  std::vector<EdgeKey> added;
  if (non_spanner_.erase(e) == 1) {
    recourse_.record(0, 0);
    return added;
  }

  spanner_.delete_edge(e);
  sequence_.erase(std::find(sequence_.begin(), sequence_.end(), e));
  if (ops_) ops_->charge(Module::Greedy, 2);

  // Re-run greedy on the non-spanner suffix; the surviving spanner is the
  // prefix and stays untouched.
  for (auto it = non_spanner_.begin(); it != non_spanner_.end();) {
    if (spanner_within(*it)) {
      ++it;
      continue;
    }
    accept(*it);
    added.push_back(*it);
    it = non_spanner_.erase(it);
  }
  recourse_.record(added.size(), 1);
  return added;
}

}  // namespace dynspan
