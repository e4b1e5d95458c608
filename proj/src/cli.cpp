// Copyright 2026 The dynmis Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dynmis/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dynmis/dyngraph.hpp"
#include "dynmis/harness.hpp"
#include "dynmis/suites.hpp"
#include "dynmis/trace.hpp"

namespace dynmis::cli {

namespace {

// Thrown for unreadable or unwritable paths; maps to kExitIo.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw IoError("cannot write " + path);
}

// Degree suite pass rule: from k = 16 up, at least 95% of seeds within the threshold.
constexpr Rank kDegreeMinK = 16;
constexpr double kDegreeMinFraction = 0.95;

struct GenArgs {
  std::string model = "uniform-mix";
  std::uint32_t n = 128;
  std::size_t count = 1000;
  double density = 0.1;
  std::size_t window = 0;
  std::uint64_t trace_seed = 1;
  std::string input;
  std::string out = "-";
};

struct RunArgs {
  std::string trace;
  std::optional<std::uint32_t> n;
  std::optional<std::uint64_t> perm_seed;
  std::optional<std::uint64_t> trace_seed;
  bool verify = false;
  std::size_t check_every = 1;
  bool skip_illegal = false;
  std::string metrics;
  std::string dump;
  std::string initial;
  std::string repro_dir = "repro";
};

struct VerifyArgs {
  std::string suite;
  std::optional<std::uint32_t> n;
  std::optional<std::size_t> seeds;
  std::optional<std::size_t> events;
  std::optional<double> density;
  std::optional<double> c;
  std::optional<std::uint64_t> perm_seed;
  std::optional<std::uint64_t> trace_seed;
  std::size_t check_every = 1;
  bool serial = false;
};

struct BenchArgs {
  std::vector<std::uint32_t> n_list{1024, 4096, 16384};
  std::size_t seeds = 10;
  std::size_t count = 2000;
  double density = 0.01;
  std::uint64_t perm_seed = 1;
  std::uint64_t trace_seed = 5001;
  std::string csv;
  bool serial = false;
};

int cmd_gen(const GenArgs& a, std::ostream& out, std::ostream& err) {
  Trace t;
  if (a.model == "scripted") {
    if (a.input.empty()) {
      err << "gen: --model scripted needs --input\n";
      return kExitUsage;
    }
    t = parse_trace_string(read_file(a.input));
  } else {
    t.n = a.n;
    t.events = a.model == "uniform-mix"
                   ? gen_uniform_mix(a.n, a.count, a.density, a.trace_seed)
                   : gen_sliding_window(a.n, a.count, a.density, a.trace_seed, a.window);
  }
  const std::string text = serialize_trace(t);
  std::ostream& note = a.out == "-" ? err : out;
  if (a.out == "-") {
    out << text;
  } else {
    write_file(a.out, text);
  }
  note << "trace_seed " << a.trace_seed << '\n';
  return kExitOk;
}

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
  const Trace trace = parse_trace_string(read_file(a.trace));
  if (a.n && *a.n != trace.n) {
    err << "run: --n " << *a.n << " does not match trace header n " << trace.n << '\n';
    return kExitUsage;
  }
  std::optional<DynGraph> g;
  if (!a.initial.empty()) {
    g.emplace(DynGraph::from_dump(read_file(a.initial)));
    if (g->size() != trace.n) {
      err << "run: initial dump has n " << g->size() << ", trace has " << trace.n << '\n';
      return kExitUsage;
    }
    if (a.perm_seed && *a.perm_seed != g->perm().seed()) {
      err << "run: --perm-seed disagrees with the initial dump\n";
      return kExitUsage;
    }
  } else {
    g.emplace(DynGraph::build(Permutation::generate(trace.n, a.perm_seed.value_or(1)), {}));
  }
  const std::uint64_t perm_seed = g->perm().seed();
  const std::string initial_dump = g->dump();

  RunOptions opts;
  opts.verify = a.verify;
  opts.check_every = a.check_every;
  opts.skip_illegal = a.skip_illegal;
  RunReport report;
  try {
    report = run_trace(*g, trace.events, opts);
  } catch (const VerificationError& ex) {
    const std::size_t idx = ex.event_index();
    ReproBundle bundle;
    bundle.perm_seed = perm_seed;
    bundle.initial_dump = initial_dump;
    bundle.prefix.n = trace.n;
    bundle.prefix.events.assign(trace.events.begin(), trace.events.begin() + idx + 1);
    bundle.failing_event = idx;
    bundle.message = ex.what();
    err << "verification failed: " << ex.what() << '\n';
    try {
      out << "repro bundle: " << write_repro_bundle(a.repro_dir, bundle).string() << '\n';
    } catch (const std::exception& io) {
      err << "could not write repro bundle: " << io.what() << '\n';
    }
    return kExitVerify;
  }

  for (const auto& [v, member] : report.queries) out << "? " << v << ' ' << member << '\n';
  for (const auto& [i, msg] : report.skipped) err << "skipped " << msg << '\n';
  if (!a.metrics.empty()) {
    std::ostringstream csv;
    write_metrics_csv(csv, report.rows);
    write_file(a.metrics, csv.str());
  }
  if (!a.dump.empty()) write_file(a.dump, g->dump());

  std::size_t hard = 0;
  for (const MetricsRow& row : report.rows) hard += row.m.easy_case == EasyCase::kNone ? 1 : 0;
  out << "perm_seed " << perm_seed;
  if (a.trace_seed) out << " trace_seed " << *a.trace_seed;
  out << " events " << trace.events.size() << " updates " << report.rows.size() << " hard "
      << hard << " checks " << report.checks << " skipped " << report.skipped.size()
      << " mis_size ";
  std::size_t mis = 0;
  for (Vertex v = 0; v < g->size(); ++v) mis += g->in_mis(v) ? 1 : 0;
  out << mis << '\n';
  return kExitOk;
}

int verify_equivalence(const VerifyArgs& a, suites::EquivalenceConfig cfg, std::ostream& out) {
  if (a.n) cfg.n = *a.n;
  if (a.seeds) cfg.seeds = *a.seeds;
  if (a.events) cfg.events = *a.events;
  if (a.density) cfg.density = *a.density;
  if (a.perm_seed) cfg.perm_seed_base = *a.perm_seed;
  if (a.trace_seed) cfg.trace_seed_base = *a.trace_seed;
  cfg.check_every = a.check_every;
  const auto exec = a.serial ? suites::Execution::kSerial : suites::Execution::kParallel;
  const auto report = suites::equivalence_suite(cfg, exec);
  for (const auto& c : report.cells) {
    out << "perm_seed " << c.perm_seed << " trace_seed " << c.trace_seed << " updates "
        << c.updates << " hard " << c.hard << " checks " << c.checks << ' '
        << (c.ok ? "ok" : "FAIL");
    if (!c.ok) out << " event " << c.failing_event << ": " << c.error;
    out << '\n';
  }
  out << a.suite << ": n " << cfg.n << " cells " << report.cells.size() << " checks "
      << report.total_checks() << " hard " << report.total_hard() << " failures "
      << report.failures() << '\n';
  return report.failures() == 0 ? kExitOk : kExitVerify;
}

int verify_exhaustive(const VerifyArgs& a, std::ostream& out) {
  const auto exec = a.serial ? suites::Execution::kSerial : suites::Execution::kParallel;
  const auto catalog = suites::exhaustive_catalog();
  const auto r = suites::exhaustive_suite(catalog, exec);
  for (const auto& v : r.violations) {
    out << "VIOLATION " << v.graph << " u " << v.u << " v " << v.v << ' '
        << (v.kind == UpdateKind::kInsert ? "insert" : "delete") << ' ' << v.condition
        << " E[|S|] " << v.value << " bound " << v.bound << '\n';
  }
  out << "exhaustive: graphs " << r.graphs << " updates " << r.updates << " fixed_checks "
      << r.fixed_checks << " window_checks " << r.window_checks << " worst_fixed_ratio "
      << r.worst_fixed_ratio << " worst_window_ratio " << r.worst_window_ratio
      << " violations " << r.violations.size() << '\n';
  const std::uint64_t seed = a.trace_seed.value_or(1);
  for (std::uint32_t n : {64u, 128u}) {
    for (const auto& row : suites::monte_carlo_expected_s(n, 0.1, 2000, seed, exec)) {
      out << "monte_carlo n " << row.n << " b " << row.b << " samples " << row.samples
          << std::fixed << std::setprecision(4) << " mean_s " << row.mean_s << " n/2^b "
          << row.scale << " ratio " << row.ratio << std::defaultfloat << '\n';
    }
  }
  return r.violations.empty() ? kExitOk : kExitVerify;
}

int verify_degree(const VerifyArgs& a, std::ostream& out) {
  suites::DegreeConfig cfg;
  if (a.n) cfg.n = *a.n;
  if (a.seeds) cfg.seeds = *a.seeds;
  if (a.density) cfg.p = *a.density;
  if (a.c) cfg.c = *a.c;
  if (a.perm_seed) cfg.perm_seed_base = *a.perm_seed;
  if (a.trace_seed) cfg.graph_seed = *a.trace_seed;
  if (cfg.n < 16 || !(cfg.c > 0)) {
    out << "degree: needs n >= 16 and c > 0\n";
    return kExitUsage;
  }
  const auto exec = a.serial ? suites::Execution::kSerial : suites::Execution::kParallel;
  const auto r = suites::degree_suite(cfg, exec);
  const auto required =
      static_cast<std::size_t>(std::ceil(kDegreeMinFraction * static_cast<double>(cfg.seeds)));
  bool ok = true;
  for (std::size_t j = 0; j < r.ks.size(); ++j) {
    const Rank k = r.ks[j];
    std::size_t max_obs = 0;
    for (std::size_t s = 0; s < cfg.seeds; ++s) {
      max_obs = std::max(max_obs, r.records[s * r.ks.size() + j].observed);
    }
    const std::size_t within = r.within(k);
    const bool gated = k >= kDegreeMinK;
    if (gated && within < required) ok = false;
    out << "k " << k << " threshold " << std::fixed << std::setprecision(2)
        << r.records[j].threshold << std::defaultfloat << " max_observed " << max_obs
        << " within " << within << '/' << cfg.seeds
        << (gated ? (within >= required ? " ok" : " FAIL") : " (report only)") << '\n';
  }
  out << "degree: n " << cfg.n << " p " << cfg.p << " c " << cfg.c << " seeds " << cfg.seeds
      << ' ' << (ok ? "ok" : "FAIL") << '\n';
  return ok ? kExitOk : kExitVerify;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  if (a.suite == "structure") return verify_equivalence(a, {}, out);
  if (a.suite == "influenced") {
    suites::EquivalenceConfig cfg;
    cfg.n = 24;
    cfg.density = 0.2;
    cfg.events = 2000;
    cfg.seeds = 10;
    return verify_equivalence(a, cfg, out);
  }
  if (a.suite == "exhaustive") return verify_exhaustive(a, out);
  return verify_degree(a, out);
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  suites::ScalingConfig cfg;
  cfg.n_list = a.n_list;
  cfg.updates = a.count;
  cfg.seeds = a.seeds;
  cfg.density = a.density;
  cfg.perm_seed_base = a.perm_seed;
  cfg.trace_seed_base = a.trace_seed;
  const auto r = suites::scaling_suite(
      cfg, a.serial ? suites::Execution::kSerial : suites::Execution::kParallel);

  out << std::fixed << std::setprecision(4);
  out << "perm_seed_base " << a.perm_seed << " trace_seed_base " << a.trace_seed << " seeds "
      << a.seeds << " updates " << a.count << " density " << a.density << '\n';
  for (const auto& row : r.rows) {
    out << "n " << row.n << " updates " << row.updates << " hard " << row.hard
        << " mean_touched " << row.mean_touched << " p99_touched " << row.p99_touched
        << " mean_changes " << row.mean_changes << " mean_bound " << row.mean_bound
        << " p99_bound " << row.p99_bound << " seconds " << row.seconds << '\n';
  }
  for (const auto& ratio : r.ratios) {
    out << "ratio " << ratio.from << "->" << ratio.to << " touched " << ratio.touched
        << " changes " << ratio.changes << " bound " << ratio.bound << '\n';
  }
  out << std::defaultfloat;

  if (!a.csv.empty()) {
    std::ostringstream csv;
    csv << std::setprecision(10);
    csv << "kind,n,to_n,updates,hard,mean_touched,p99_touched,mean_changes,mean_bound,"
           "p99_bound,seconds,perm_seed_base,trace_seed_base\n";
    for (const auto& row : r.rows) {
      csv << "size," << row.n << ',' << row.n << ',' << row.updates << ',' << row.hard << ','
          << row.mean_touched << ',' << row.p99_touched << ',' << row.mean_changes << ','
          << row.mean_bound << ',' << row.p99_bound << ',' << row.seconds << ',' << a.perm_seed
          << ',' << a.trace_seed << '\n';
    }
    for (const auto& ratio : r.ratios) {
      csv << "ratio," << ratio.from << ',' << ratio.to << ",,," << ratio.touched << ",,"
          << ratio.changes << ',' << ratio.bound << ",,," << a.perm_seed << ',' << a.trace_seed
          << '\n';
    }
    write_file(a.csv, csv.str());
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dynamic greedy maximal independent set under edge updates"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Write a workload trace");
  g->add_option("--model", gen.model)
      ->check(CLI::IsMember({"uniform-mix", "sliding-window", "scripted"}));
  g->add_option("--n", gen.n)->check(CLI::Range(2u, UINT32_MAX));
  g->add_option("--count", gen.count);
  g->add_option("--density", gen.density);
  g->add_option("--window", gen.window, "Live-edge cap for sliding-window (0: density)");
  g->add_option("--trace-seed,--seed", gen.trace_seed);
  g->add_option("--input", gen.input, "Trace to pass through for --model scripted");
  g->add_option("--out", gen.out, "Output path, - for stdout");

  RunArgs run_args;
  auto* r = app.add_subcommand("run", "Replay a trace");
  r->add_option("--trace", run_args.trace)->required();
  r->add_option("--n", run_args.n);
  r->add_option("--perm-seed", run_args.perm_seed);
  r->add_option("--trace-seed", run_args.trace_seed, "Recorded in the summary only");
  r->add_flag("--verify", run_args.verify);
  r->add_option("--check-every", run_args.check_every)->check(CLI::PositiveNumber);
  r->add_flag("--skip-illegal", run_args.skip_illegal);
  r->add_option("--metrics", run_args.metrics, "Per-update CSV");
  r->add_option("--dump", run_args.dump, "Final snapshot");
  r->add_option("--initial", run_args.initial, "Start from a snapshot instead of the empty graph");
  r->add_option("--repro-dir", run_args.repro_dir);

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Run a verification suite");
  v->add_option("suite", ver.suite)
      ->required()
      ->check(CLI::IsMember({"structure", "influenced", "exhaustive", "degree"}));
  v->add_option("--n", ver.n);
  v->add_option("--seeds", ver.seeds);
  v->add_option("--events", ver.events);
  v->add_option("--density", ver.density, "Edge density (degree: G(n, p) probability)");
  v->add_option("--c", ver.c);
  v->add_option("--perm-seed", ver.perm_seed, "First permutation seed");
  v->add_option("--trace-seed", ver.trace_seed, "First trace seed (degree: graph seed)");
  v->add_option("--check-every", ver.check_every)->check(CLI::PositiveNumber);
  v->add_flag("--serial", ver.serial, "Run cells on one thread");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Measure work growth over n");
  b->add_option("--n-list", bench.n_list)->delimiter(',');
  b->add_option("--seeds", bench.seeds);
  b->add_option("--count", bench.count, "Updates per seed");
  b->add_option("--density", bench.density);
  b->add_option("--perm-seed", bench.perm_seed, "First permutation seed");
  b->add_option("--trace-seed", bench.trace_seed, "First trace seed");
  b->add_option("--csv", bench.csv);
  b->add_flag("--serial", bench.serial, "Run cells on one thread");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (g->parsed()) return cmd_gen(gen, out, err);
    if (r->parsed()) return cmd_run(run_args, out, err);
    if (v->parsed()) return cmd_verify(ver, out);
    return cmd_bench(bench, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const TraceParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerify;
  } catch (const StructuralError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerify;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace dynmis::cli
