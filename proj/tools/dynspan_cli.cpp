// Command-line driver: run an algorithm against an adversary, replay-verify
// a stream, or benchmark several algorithms on one workload.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dynspan/adversary.hpp"
#include "dynspan/error.hpp"
#include "dynspan/job_machine.hpp"
#include "dynspan/resample3.hpp"
#include "dynspan/runner.hpp"
#include "dynspan/stream.hpp"

namespace {

using namespace dynspan;

constexpr int kExitOk = 0;
constexpr int kExitCheck = 2;
constexpr int kExitInput = 3;

struct Options {
  std::string algo = "det3";
  unsigned k = 2;
  std::size_t n = 64;
  std::size_t m = 0;
  std::uint64_t steps = 1000;
  std::uint64_t seed = 1;
  std::string adversary = "random";
  std::optional<double> p_insert;
  std::uint64_t phase_len = 0;
  bool wrapped = false;
  std::string check = "none";
  std::size_t sample = 64;
  std::string out;
  bool inject_fault = false;
  std::string instance;
  std::string stream;
  std::vector<std::string> algos{"det3", "resample3"};
};

CheckLevel parse_check(const std::string& s) {
  if (s == "none") return CheckLevel::None;
  if (s == "sampled") return CheckLevel::Sampled;
  if (s == "exact") return CheckLevel::Exact;
  fail(Errc::BadArgs, "unknown check level '" + s + "'");
}

UpdateStream load_stream(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::StreamParse, "cannot open " + path);
  return parse_stream(in);
}

// Initial graph and adversary for one spanner run.
struct Workload {
  DynamicGraph initial;
  std::unique_ptr<Adversary> adversary;
};

Workload make_workload(const Options& o, const std::string& algo) {
  Workload w;
  const std::uint64_t adv_seed = mix_seed(o.seed, 2);
  if (o.adversary.rfind("replay:", 0) == 0) {
    UpdateStream s = load_stream(o.adversary.substr(7));
    w.initial = DynamicGraph(s.n);
    std::size_t start = 0;
    if (algo == "greedy") {
      // The leading insertions describe the graph the greedy spanner starts from.
      while (start < s.events.size() && s.events[start].kind == UpdateKind::Insert) {
        if (w.initial.has_edge(s.events[start].edge)) {
          fail(Errc::IllegalUpdate, "line " + std::to_string(s.lines[start]) + ": duplicate edge");
        }
        w.initial.insert_edge(s.events[start].edge);
        ++start;
      }
    }
    w.adversary = std::make_unique<Replay>(std::move(s), start);
    return w;
  }
  Rng graph_rng(mix_seed(o.seed, 1));
  w.initial = random_graph(o.n, o.m, graph_rng);
  const double p = o.p_insert.value_or(algo == "greedy" ? 0.0 : 0.5);
  if (p < 0.0 || p > 1.0) fail(Errc::BadArgs, "--p-insert must lie in [0, 1]");
  if (algo == "greedy" && p > 0.0) fail(Errc::BadArgs, "greedy accepts deletions only");
  if (o.adversary == "random") {
    w.adversary = std::make_unique<RandomOblivious>(p, o.steps, adv_seed);
  } else if (o.adversary == "spanner-target") {
    w.adversary = std::make_unique<SpannerTargeting>(p, o.steps, adv_seed);
  } else if (o.adversary == "witness-hammer") {
    w.adversary = std::make_unique<WitnessHammer>(p, o.steps, adv_seed);
  } else {
    fail(Errc::BadArgs, "unknown adversary '" + o.adversary + "' for --algo " + algo);
  }
  return w;
}

AlgorithmConfig algo_config(const Options& o, const std::string& algo) {
  AlgorithmConfig cfg;
  cfg.algo = algo;
  cfg.k = o.k;
  cfg.seed = o.seed;
  cfg.phase_len = o.phase_len;
  cfg.wrapped = o.wrapped;
  cfg.inject_fault = o.inject_fault;
  return cfg;
}

void write_outputs(const Options& o, const RunResult& r, const nlohmann::ordered_json& meta) {
  if (o.out.empty()) {
    write_metrics_csv(std::cout, r.rows);
    return;
  }
  std::ofstream csv(o.out, std::ios::binary);
  if (!csv) fail(Errc::BadArgs, "cannot write " + o.out);
  write_metrics_csv(csv, r.rows);
  std::ofstream js(o.out + ".meta.json", std::ios::binary);
  js << meta.dump(2) << '\n';
}

void report_failure(const RunResult& r) {
  std::cerr << "CheckFailed: step " << r.failed_step;
  if (r.witness) {
    std::cerr << ", edge (" << r.witness->lo << "," << r.witness->hi << ") at distance ";
    if (r.witness_dist == kUnreachable) {
      std::cerr << "inf";
    } else {
      std::cerr << r.witness_dist;
    }
  }
  if (!r.detail.empty()) std::cerr << ", " << r.detail;
  std::cerr << '\n';
}

int run_jm(const Options& o) {
  HyperInstance inst;
  if (!o.instance.empty()) {
    std::ifstream in(o.instance);
    if (!in) fail(Errc::StreamParse, "cannot open " + o.instance);
    inst = HyperInstance::parse(in);
  } else {
    Rng rng(mix_seed(o.seed, 1));
    inst = HyperInstance::random(static_cast<std::uint32_t>(o.n), static_cast<std::uint32_t>(6 * o.n),
                                 12, 2, rng);
  }
  OpCounter ops;
  ProactiveResampler engine(inst, o.seed, o.steps, &ops);
  std::unique_ptr<MachineAdversary> adv;
  if (o.adversary == "max-load") {
    adv = std::make_unique<MaxLoadMachine>(o.steps);
  } else if (o.adversary == "random") {
    adv = std::make_unique<RandomMachine>(o.steps, mix_seed(o.seed, 2));
  } else {
    fail(Errc::BadArgs, "--algo jm supports --adversary max-load or random");
  }
  const RunResult r = run_machines(engine, *adv, ops);
  nlohmann::ordered_json meta;
  meta["algo"] = "jm";
  meta["jobs"] = inst.job_count();
  meta["machines"] = inst.machine_count();
  meta["routines"] = inst.routines().size();
  meta["horizon"] = o.steps;
  meta["seed"] = o.seed;
  meta["adversary"] = adv->name();
  meta["instance"] = o.instance;
  meta["rows"] = r.rows.size();
  meta["resample_calls"] = engine.resample_calls();
  meta["feasible"] = !r.check_failed;
  write_outputs(o, r, meta);
  if (r.check_failed) {
    std::cerr << "CheckFailed: infeasible assignment at step " << r.failed_step << '\n';
    return kExitCheck;
  }
  return kExitOk;
}

int cmd_run(const Options& o) {
  if (o.algo == "jm") return run_jm(o);
  Workload w = make_workload(o, o.algo);
  const std::size_t n = w.initial.vertex_count();
  const std::size_t m0 = w.initial.edge_count();
  OpCounter ops;
  auto algo = make_algorithm(algo_config(o, o.algo), std::move(w.initial), &ops);
  RunOptions ro;
  ro.check = parse_check(o.check);
  ro.sample_count = o.sample;
  ro.check_seed = mix_seed(o.seed, 3);
  const RunResult r = run_spanner(*algo, *w.adversary, ro, ops);

  nlohmann::ordered_json meta;
  meta["algo"] = o.algo;
  meta["n"] = n;
  meta["k"] = o.k;
  meta["initial_edges"] = m0;
  meta["steps"] = o.steps;
  meta["seed"] = o.seed;
  meta["adversary"] = w.adversary->name();
  meta["p_insert"] = o.p_insert ? nlohmann::ordered_json(*o.p_insert) : nlohmann::ordered_json();
  if (o.algo == "resample3") {
    const std::uint64_t def = default_phase_length(n);
    const std::uint64_t len = o.phase_len == 0 ? def : o.phase_len;
    meta["phase_len"] = len;
    meta["default_phase_len"] = def;
    meta["phase_len_deviation"] = len != def;
    meta["wrapped"] = o.wrapped;
  }
  meta["check"] = o.check;
  meta["rows"] = r.rows.size();
  meta["check_failed"] = r.check_failed;
  if (r.check_failed) {
    meta["failed_step"] = r.failed_step;
    if (r.witness) meta["witness"] = {r.witness->lo, r.witness->hi};
    if (!r.detail.empty()) meta["detail"] = r.detail;
  }
  write_outputs(o, r, meta);
  if (r.check_failed) {
    report_failure(r);
    return kExitCheck;
  }
  return kExitOk;
}

int cmd_verify(const Options& o) {
  if (o.stream.empty()) fail(Errc::BadArgs, "--stream is required");
  Options v = o;
  v.adversary = "replay:" + o.stream;
  Workload w = make_workload(v, o.algo);
  OpCounter ops;
  auto algo = make_algorithm(algo_config(o, o.algo), std::move(w.initial), &ops);
  // The starting graph is checked too.
  const StretchReport first = verify_stretch(algo->graph(), algo->spanner(), algo->stretch());
  if (!first.ok) {
    report_failure({{}, true, 0, first.worst_edge, first.worst_dist});
    return kExitCheck;
  }
  RunOptions ro;
  ro.check = CheckLevel::Exact;
  const RunResult r = run_spanner(*algo, *w.adversary, ro, ops);
  if (r.check_failed) {
    report_failure(r);
    return kExitCheck;
  }
  std::cout << "ok: " << r.rows.size() << " updates verified\n";
  return kExitOk;
}

std::uint64_t percentile(std::vector<std::uint64_t> v, double q) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  // Nearest rank.
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
  return v[std::clamp<std::size_t>(rank, 1, v.size()) - 1];
}

int cmd_bench(const Options& o) {
  struct Row {
    std::string algo;
    std::uint64_t updates, p50, p95, max_ops, max_recourse;
    double mean_recourse;
  };
  std::vector<Row> rows;
  for (const std::string& name : o.algos) {
    if (name == "jm") fail(Errc::BadArgs, "bench covers spanner algorithms only");
    Workload w = make_workload(o, name);
    OpCounter ops;
    auto algo = make_algorithm(algo_config(o, name), std::move(w.initial), &ops);
    const RunResult r = run_spanner(*algo, *w.adversary, {}, ops);
    if (r.rows.empty()) continue;
    std::vector<std::uint64_t> op_counts;
    std::uint64_t total = 0;
    std::uint64_t worst = 0;
    for (const MetricsRow& row : r.rows) {
      op_counts.push_back(row.op_count);
      const std::uint64_t rec = row.recourse_add + row.recourse_del;
      total += rec;
      worst = std::max(worst, rec);
    }
    rows.push_back({name, r.rows.size(), percentile(op_counts, 0.5), percentile(op_counts, 0.95),
                    percentile(op_counts, 1.0), worst,
                    static_cast<double>(total) / static_cast<double>(r.rows.size())});
  }
  std::ostringstream csv;
  csv << "algo,updates,ops_p50,ops_p95,ops_max,recourse_mean,recourse_max\n";
  for (const Row& r : rows) {
    csv << r.algo << ',' << r.updates << ',' << r.p50 << ',' << r.p95 << ',' << r.max_ops << ','
        << std::fixed << std::setprecision(4) << r.mean_recourse << ',' << r.max_recourse << '\n';
  }
  std::cout << std::left << std::setw(12) << "algo" << std::right << std::setw(9) << "updates"
            << std::setw(10) << "ops p50" << std::setw(10) << "ops p95" << std::setw(10)
            << "ops max" << std::setw(12) << "rec mean" << std::setw(10) << "rec max" << '\n';
  for (const Row& r : rows) {
    std::cout << std::left << std::setw(12) << r.algo << std::right << std::setw(9) << r.updates
              << std::setw(10) << r.p50 << std::setw(10) << r.p95 << std::setw(10) << r.max_ops
              << std::setw(12) << std::fixed << std::setprecision(3) << r.mean_recourse
              << std::setw(10) << r.max_recourse << '\n';
  }
  if (!o.out.empty()) {
    std::ofstream out(o.out, std::ios::binary);
    if (!out) fail(Errc::BadArgs, "cannot write " + o.out);
    out << csv.str();
  }
  return kExitOk;
}

void add_workload_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--k", o.k, "stretch parameter (greedy variants: 2k-1)");
  cmd->add_option("--n", o.n, "vertex count (jm: job count)");
  cmd->add_option("--m", o.m, "initial edge count of the random graph");
  cmd->add_option("--steps", o.steps, "update budget (jm: horizon)");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--adversary", o.adversary,
                  "random, spanner-target, witness-hammer, max-load or replay:<file>");
  cmd->add_option("--p-insert", o.p_insert, "insertion probability of generated streams");
  cmd->add_option("--phase-len", o.phase_len, "resample3 phase length (default ceil(n^1.5))");
  cmd->add_flag("--wrapped", o.wrapped, "resample3: spread rebuilds over the updates");
  cmd->add_flag("--inject-fault", o.inject_fault)->group("");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Dynamic graph spanner toolkit"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run an algorithm against an adversary");
  run->add_option("--algo", o.algo, "greedy, fd-greedy, det3, resample3 or jm");
  add_workload_flags(run, o);
  run->add_option("--check", o.check, "none, sampled or exact");
  run->add_option("--sample", o.sample, "edges checked per step in sampled mode");
  run->add_option("--out", o.out, "metrics CSV path (metadata goes to <out>.meta.json)");
  run->add_option("--instance", o.instance, "jm instance file");

  auto* verify = app.add_subcommand("verify", "replay a stream with exact checks");
  verify->add_option("--stream", o.stream, "update stream file")->required();
  verify->add_option("--algo", o.algo, "greedy, fd-greedy, det3 or resample3");
  verify->add_option("--k", o.k);
  verify->add_option("--seed", o.seed);
  verify->add_option("--phase-len", o.phase_len);
  verify->add_flag("--wrapped", o.wrapped);
  verify->add_flag("--inject-fault", o.inject_fault)->group("");

  auto* bench = app.add_subcommand("bench", "op-count and recourse summary per algorithm");
  bench->add_option("--algos", o.algos, "algorithms to compare")->delimiter(',');
  add_workload_flags(bench, o);
  bench->add_option("--out", o.out, "also write the table as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*run) return cmd_run(o);
    if (*verify) return cmd_verify(o);
    return cmd_bench(o);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return e.code() == Errc::CheckFailed ? kExitCheck : kExitInput;
  }
}
