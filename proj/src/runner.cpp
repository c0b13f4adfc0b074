#include "dynspan/runner.hpp"

#include <algorithm>
#include <iterator>
#include <type_traits>

#include "dynspan/det3.hpp"
#include "dynspan/error.hpp"
#include "dynspan/fully_dynamic.hpp"
#include "dynspan/greedy_spanner.hpp"
#include "dynspan/resample3.hpp"
#include "dynspan/wrapped3.hpp"

namespace dynspan {

namespace {

class GreedyAlgo final : public SpannerAlgorithm {
 public:
  GreedyAlgo(DynamicGraph g, unsigned k, OpCounter* ops) : impl_(std::move(g), k, ops) {}
  std::string name() const override { return "greedy"; }
  const DynamicGraph& graph() const override { return impl_.graph(); }
  std::vector<EdgeKey> spanner() const override { return impl_.spanner_edges(); }
  std::size_t spanner_size() const override { return impl_.spanner_size(); }
  std::uint32_t stretch() const override { return 2 * impl_.k() - 1; }
  StepResult apply(const UpdateEvent& ev) override {
    if (ev.kind == UpdateKind::Insert) {
      fail(Errc::IllegalUpdate, "the decremental greedy spanner accepts deletions only");
    }
    const bool was = impl_.in_spanner(ev.edge);
    StepResult r;
    r.added = impl_.handle_delete(ev.edge);
    if (was) r.removed.push_back(ev.edge);
    return r;
  }

 private:
  GreedySpanner impl_;
};

class FdGreedyAlgo final : public SpannerAlgorithm {
 public:
  FdGreedyAlgo(const DynamicGraph& g, unsigned k, OpCounter* ops) : impl_(g.vertex_count(), k, ops) {
    for (const EdgeKey& e : g.edges()) impl_.insert(e);
  }
  std::string name() const override { return "fd-greedy"; }
  const DynamicGraph& graph() const override { return impl_.graph(); }
  std::vector<EdgeKey> spanner() const override { return impl_.spanner(); }
  std::size_t spanner_size() const override { return impl_.spanner_size(); }
  std::uint32_t stretch() const override { return 2 * impl_.k() - 1; }
  StepResult apply(const UpdateEvent& ev) override {
    const std::vector<EdgeKey> before = impl_.spanner();
    if (ev.kind == UpdateKind::Insert) {
      impl_.insert(ev.edge);
    } else {
      impl_.erase(ev.edge);
    }
    const std::vector<EdgeKey> after = impl_.spanner();
    StepResult r;
    std::set_difference(after.begin(), after.end(), before.begin(), before.end(),
                        std::back_inserter(r.added));
    std::set_difference(before.begin(), before.end(), after.begin(), after.end(),
                        std::back_inserter(r.removed));
    return r;
  }

  std::optional<std::string> self_check() const override { return impl_.check_invariants(); }

 private:
  FullyDynamicSpanner impl_;
};

class Det3Algo final : public SpannerAlgorithm {
 public:
  Det3Algo(DynamicGraph g, OpCounter* ops, bool fault) : impl_(std::move(g), ops) {
    if (fault) impl_.inject_fault();
  }
  std::string name() const override { return "det3"; }
  const DynamicGraph& graph() const override { return impl_.graph(); }
  std::vector<EdgeKey> spanner() const override { return impl_.spanner(); }
  std::size_t spanner_size() const override { return impl_.spanner_size(); }
  std::uint32_t stretch() const override { return 3; }
  StepResult apply(const UpdateEvent& ev) override {
    const auto ch = ev.kind == UpdateKind::Insert ? impl_.insert(ev.edge) : impl_.erase(ev.edge);
    return {ch.added, ch.removed, 0};
  }
  std::optional<std::string> self_check() const override { return impl_.check_index(); }

 private:
  Det3Spanner impl_;
};

template <class Impl>
class Resample3Algo final : public SpannerAlgorithm {
 public:
  Resample3Algo(DynamicGraph g, std::uint64_t seed, std::uint64_t len, OpCounter* ops)
      : impl_(std::move(g), seed, len, ops) {}
  std::string name() const override { return "resample3"; }
  const DynamicGraph& graph() const override { return impl_.graph(); }
  std::vector<EdgeKey> spanner() const override { return impl_.spanner(); }
  std::size_t spanner_size() const override { return impl_.spanner_size(); }
  std::uint32_t stretch() const override { return 3; }
  StepResult apply(const UpdateEvent& ev) override {
    const auto ch = ev.kind == UpdateKind::Insert ? impl_.insert(ev.edge) : impl_.erase(ev.edge);
    return {ch.added, ch.removed, ch.resamples};
  }
  std::optional<EdgeKey> hottest_edge() const override {
    if constexpr (std::is_same_v<Impl, Wrapped3Spanner>) {
      return impl_.active().max_load_edge();
    } else {
      return impl_.phase().max_load_edge();
    }
  }
  std::optional<std::string> self_check() const override {
    if constexpr (std::is_same_v<Impl, Wrapped3Spanner>) {
      return impl_.active().check_index();
    } else {
      return impl_.phase().check_index();
    }
  }

 private:
  Impl impl_;
};

}  // namespace

std::unique_ptr<SpannerAlgorithm> make_algorithm(const AlgorithmConfig& cfg, DynamicGraph initial,
                                                 OpCounter* ops) {
  if (cfg.k == 0) fail(Errc::BadArgs, "k must be at least 1");
  if (cfg.algo == "greedy") return std::make_unique<GreedyAlgo>(std::move(initial), cfg.k, ops);
  if (cfg.algo == "fd-greedy") return std::make_unique<FdGreedyAlgo>(initial, cfg.k, ops);
  if (cfg.algo == "det3") return std::make_unique<Det3Algo>(std::move(initial), ops, cfg.inject_fault);
  if (cfg.algo == "resample3") {
    const std::uint64_t len =
        cfg.phase_len == 0 ? default_phase_length(initial.vertex_count()) : cfg.phase_len;
    if (cfg.wrapped) {
      return std::make_unique<Resample3Algo<Wrapped3Spanner>>(std::move(initial), cfg.seed, len, ops);
    }
    return std::make_unique<Resample3Algo<Resample3Spanner>>(std::move(initial), cfg.seed, len, ops);
  }
  fail(Errc::BadArgs, "unknown algorithm '" + cfg.algo + "'");
}

RunResult run_spanner(SpannerAlgorithm& algo, Adversary& adv, const RunOptions& opt,
                      OpCounter& ops) {
  RunResult result;
  ops.discard_step();
  for (std::uint64_t step = 1;; ++step) {
    const std::vector<EdgeKey> current = algo.spanner();
    AdversaryView view{&algo.graph(), current, [&algo] { return algo.hottest_edge(); }};
    const auto ev = adv.next(view);
    ops.discard_step();  // adversary queries are not algorithm work
    if (!ev) break;
    const StepResult r = algo.apply(*ev);
    ops.end_step();

    MetricsRow row;
    row.step = step;
    row.event = std::string(ev->kind == UpdateKind::Insert ? "+" : "-") + " " +
                std::to_string(ev->edge.lo) + " " + std::to_string(ev->edge.hi);
    row.recourse_add = r.added.size();
    row.recourse_del = r.removed.size();
    row.spanner_size = algo.spanner_size();
    row.op_count = ops.last_step();
    row.resamples = r.resamples;
    if (opt.check != CheckLevel::None) {
      const std::vector<EdgeKey> h = algo.spanner();
      const CheckMode mode = opt.check == CheckLevel::Exact
                                 ? CheckMode::exact()
                                 : CheckMode::sampled(opt.sample_count, mix_seed(opt.check_seed, step));
      const StretchReport rep = verify_stretch(algo.graph(), h, algo.stretch(), mode);
      row.stretch_ok = rep.ok;
      if (!rep.ok) {
        result.rows.push_back(row);
        result.check_failed = true;
        result.failed_step = step;
        result.witness = rep.worst_edge;
        result.witness_dist = rep.worst_dist;
        return result;
      }
      if (opt.check == CheckLevel::Exact) {
        if (auto bad = algo.self_check()) {
          row.stretch_ok = false;
          result.rows.push_back(row);
          result.check_failed = true;
          result.failed_step = step;
          result.detail = std::move(*bad);
          return result;
        }
      }
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

RunResult run_machines(ProactiveResampler& engine, MachineAdversary& adv, OpCounter& ops) {
  RunResult result;
  ops.discard_step();
  for (std::uint64_t step = 1;; ++step) {
    if (engine.clock() >= engine.horizon()) break;
    const auto x = adv.next(engine);
    if (!x) break;
    const auto rep = engine.delete_machine(*x);
    ops.end_step();
    MetricsRow row;
    row.step = step;
    row.event = "x " + std::to_string(*x);
    row.recourse_add = rep.recourse;
    row.recourse_del = rep.touched.size();
    row.spanner_size = engine.assigned_count();
    row.op_count = ops.last_step();
    row.resamples = rep.resampled.size();
    row.stretch_ok = !engine.check_invariants().has_value();
    const bool ok = row.stretch_ok;
    result.rows.push_back(std::move(row));
    if (!ok) {
      result.check_failed = true;
      result.failed_step = step;
      return result;
    }
  }
  return result;
}

}  // namespace dynspan
