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

#include "dynmis/suites.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "dynmis/dyngraph.hpp"
#include "dynmis/harness.hpp"
#include "dynmis/trace.hpp"

namespace dynmis::suites {

namespace {

// f(i) must not throw; cells report their own failures.
template <typename F>
void for_each_cell(std::size_t count, Execution exec, F&& f) {
  if (exec == Execution::kSerial) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < total; ++i) f(static_cast<std::size_t>(i));
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(values.size())));
  return values[std::clamp<std::size_t>(rank, 1, values.size()) - 1];
}

double mean(const std::vector<double>& values) {
  if (values.empty()) return 0;
  double s = 0;
  for (double x : values) s += x;
  return s / static_cast<double>(values.size());
}

}  // namespace

std::size_t EquivalenceReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const auto& c) { return !c.ok; }));
}

std::size_t EquivalenceReport::total_checks() const {
  std::size_t s = 0;
  for (const auto& c : cells) s += c.checks;
  return s;
}

std::size_t EquivalenceReport::total_hard() const {
  std::size_t s = 0;
  for (const auto& c : cells) s += c.hard;
  return s;
}

EquivalenceReport equivalence_suite(const EquivalenceConfig& cfg, Execution exec) {
  EquivalenceReport report;
  report.cells.resize(cfg.seeds);
  for_each_cell(cfg.seeds, exec, [&](std::size_t i) {
    EquivalenceCell& cell = report.cells[i];
    cell.perm_seed = cfg.perm_seed_base + i;
    cell.trace_seed = cfg.trace_seed_base + i;
    try {
      const Workload w = uniform_mix_workload(cfg.n, cfg.density, cfg.events, cell.trace_seed);
      DynGraph g = DynGraph::build(Permutation::generate(cfg.n, cell.perm_seed), w.initial);
      RunOptions opts;
      opts.verify = true;
      opts.check_every = cfg.check_every;
      const RunReport run = run_trace(g, w.events, opts);
      cell.updates = run.rows.size();
      cell.checks = run.checks;
      for (const auto& row : run.rows) cell.hard += row.m.easy_case == EasyCase::kNone ? 1 : 0;
    } catch (const VerificationError& ex) {
      cell.ok = false;
      cell.failing_event = ex.event_index();
      cell.error = ex.what();
    } catch (const std::exception& ex) {
      cell.ok = false;
      cell.error = ex.what();
    }
  });
  return report;
}

std::vector<CatalogGraph> exhaustive_catalog() {
  constexpr std::uint32_t n = 7;
  std::vector<Edge> path, cycle, complete, star;
  for (Vertex v = 0; v + 1 < n; ++v) path.push_back({v, v + 1});
  cycle = path;
  cycle.push_back({0, n - 1});
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) complete.push_back({a, b});
  }
  for (Vertex v = 1; v < n; ++v) star.push_back({0, v});
  std::vector<CatalogGraph> out;
  out.push_back({"edgeless7", oracle::StaticGraph(n, {})});
  out.push_back({"path7", oracle::StaticGraph(n, path)});
  out.push_back({"cycle7", oracle::StaticGraph(n, cycle)});
  out.push_back({"complete7", oracle::StaticGraph(n, complete)});
  out.push_back({"star7", oracle::StaticGraph(n, star)});
  for (std::uint64_t seed : {1ull, 2ull}) {
    TraceRng rng(seed);
    out.push_back({"gnp7_0.4_seed" + std::to_string(seed),
                   oracle::StaticGraph(n, random_graph(n, 0.4, rng))});
  }
  return out;
}

ExhaustiveReport exhaustive_suite(const std::vector<CatalogGraph>& catalog, Execution exec) {
  struct Cell {
    std::size_t graph;
    Vertex x;
    Vertex y;
  };
  std::vector<Cell> cells;
  for (std::size_t gi = 0; gi < catalog.size(); ++gi) {
    const std::uint32_t n = catalog[gi].graph.size();
    for (Vertex x = 0; x < n; ++x) {
      for (Vertex y = x + 1; y < n; ++y) cells.push_back({gi, x, y});
    }
  }

  struct CellResult {
    std::size_t fixed = 0;
    std::size_t window = 0;
    oracle::Rational worst_fixed{0};
    oracle::Rational worst_window{0};
    std::vector<ExhaustiveViolation> violations;
  };
  std::vector<CellResult> results(cells.size());

  for_each_cell(cells.size(), exec, [&](std::size_t i) {
    const Cell& c = cells[i];
    const auto& g = catalog[c.graph].graph;
    const std::uint32_t n = g.size();
    const UpdateKind kind = g.has_edge(c.x, c.y) ? UpdateKind::kDelete : UpdateKind::kInsert;
    const oracle::InfluenceTable t = oracle::influence_table(g, kind, c.x, c.y);
    CellResult& r = results[i];
    const auto nn = static_cast<std::int64_t>(n);
    for (bool forward : {true, false}) {
      const Vertex u = forward ? c.x : c.y;
      const Vertex v = forward ? c.y : c.x;
      auto record = [&](oracle::Rational value, oracle::Rational bound, oracle::Rational& worst,
                        std::string name) {
        worst = std::max(worst, value / bound);
        if (!(value < bound)) {
          r.violations.push_back({catalog[c.graph].name, u, v, kind, std::move(name), value,
                                  bound});
        }
      };
      for (Rank a = 1; a < n; ++a) {
        for (Rank b = a + 1; b <= n; ++b) {
          const std::int64_t width = b - a;
          for (Rank cr = 1; cr <= a; ++cr) {
            const oracle::Condition cond = oracle::FixedEarlierEndpoint{cr, a, b};
            const auto value = oracle::expected_s_from_table(t, forward, cond);
            ++r.fixed;
            record(value, oracle::Rational(nn, width), r.worst_fixed,
                   "C=" + std::to_string(cr) + " A=" + std::to_string(a) +
                       " B=" + std::to_string(b));
          }
          if (width >= 2) {
            const oracle::Condition cond = oracle::BothInWindow{a, b};
            const auto value = oracle::expected_s_from_table(t, forward, cond);
            ++r.window;
            record(value, oracle::Rational(2 * nn, width), r.worst_window,
                   "A=" + std::to_string(a) + " B=" + std::to_string(b));
          }
        }
      }
    }
  });

  ExhaustiveReport report;
  report.graphs = catalog.size();
  report.updates = 2 * cells.size();
  for (const CellResult& r : results) {
    report.fixed_checks += r.fixed;
    report.window_checks += r.window;
    report.worst_fixed_ratio = std::max(report.worst_fixed_ratio, r.worst_fixed);
    report.worst_window_ratio = std::max(report.worst_window_ratio, r.worst_window);
    report.violations.insert(report.violations.end(), r.violations.begin(), r.violations.end());
  }
  return report;
}

std::vector<MonteCarloRow> monte_carlo_expected_s(std::uint32_t n, double p,
                                                  std::size_t trials, std::uint64_t seed,
                                                  Execution exec) {
  TraceRng graph_rng(seed);
  const oracle::StaticGraph g(n, random_graph(n, p, graph_rng));
  const int levels = num_levels(n);
  std::vector<std::size_t> sizes(trials);
  std::vector<Level> level_b(trials);
  for_each_cell(trials, exec, [&](std::size_t i) {
    // The pair stream is derived from the seed alone, the order from the trial.
    TraceRng pair_rng(seed * 1000003 + i);
    const auto x = static_cast<Vertex>(pair_rng.below(n));
    auto y = static_cast<Vertex>(pair_rng.below(n - 1));
    if (y >= x) ++y;
    const auto perm = Permutation::generate(n, seed ^ (0x9e3779b97f4a7c15ull * (i + 1)));
    const UpdateKind kind = g.has_edge(x, y) ? UpdateKind::kDelete : UpdateKind::kInsert;
    const auto mis = oracle::greedy_mis(g, perm);
    sizes[i] = oracle::influenced_set_bruteforce(g.with_update(kind, x, y), perm, mis, x, y)
                   .size();
    level_b[i] = std::min(perm.level_of_vertex(perm.rank(x) < perm.rank(y) ? y : x), levels - 1);
  });
  std::vector<MonteCarloRow> rows;
  for (Level b = 0; b < levels; ++b) {
    MonteCarloRow row;
    row.n = n;
    row.b = b;
    double total = 0;
    for (std::size_t i = 0; i < trials; ++i) {
      if (level_b[i] != b) continue;
      ++row.samples;
      total += static_cast<double>(sizes[i]);
    }
    row.mean_s = row.samples ? total / static_cast<double>(row.samples) : 0;
    row.scale = static_cast<double>(n) / static_cast<double>(std::uint64_t{1} << b);
    row.ratio = row.mean_s / row.scale;
    rows.push_back(row);
  }
  return rows;
}

std::size_t DegreeReport::within(Rank k) const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [&](const auto& r) {
    return r.k == k && !r.exceeded;
  }));
}

DegreeReport degree_suite(const DegreeConfig& cfg, Execution exec) {
  TraceRng graph_rng(cfg.graph_seed);
  const oracle::StaticGraph g(cfg.n, random_graph(cfg.n, cfg.p, graph_rng));
  DegreeReport report;
  const int levels = num_levels(cfg.n);
  for (Level j = 0; j < levels; ++j) report.ks.push_back(Rank{1} << j);
  const std::size_t nk = report.ks.size();
  report.records.resize(cfg.seeds * nk);
  const double nlogn = static_cast<double>(cfg.n) * std::log(static_cast<double>(cfg.n));

  for_each_cell(cfg.seeds, exec, [&](std::size_t s) {
    const std::uint64_t seed = cfg.perm_seed_base + s;
    const auto perm = Permutation::generate(cfg.n, seed);
    const auto dom = oracle::domination_ranks(g, perm, oracle::greedy_mis(g, perm));
    for (std::size_t j = 0; j < nk; ++j) {
      const Rank k = report.ks[j];
      std::vector<Vertex> residual;
      for (Vertex v = 0; v < cfg.n; ++v) {
        if (dom[v] > k) residual.push_back(v);
      }
      BadEventRecord& rec = report.records[s * nk + j];
      rec.perm_seed = seed;
      rec.k = k;
      rec.observed = oracle::max_degree_induced(g, residual);
      rec.threshold = cfg.c * nlogn / static_cast<double>(k);
      rec.exceeded = static_cast<double>(rec.observed) > rec.threshold;
    }
  });
  return report;
}

ScalingReport scaling_suite(const ScalingConfig& cfg, Execution exec) {
  for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
    if (!std::has_single_bit(cfg.n_list[i]) || (i > 0 && cfg.n_list[i] <= cfg.n_list[i - 1])) {
      throw std::invalid_argument("n_list must be ascending powers of two");
    }
  }
  struct CellResult {
    std::vector<double> touched, changes, bound;
    double seconds = 0;
  };
  const std::size_t cells = cfg.n_list.size() * cfg.seeds;
  std::vector<CellResult> results(cells);
  for_each_cell(cells, exec, [&](std::size_t i) {
    const std::uint32_t n = cfg.n_list[i / cfg.seeds];
    const std::size_t s = i % cfg.seeds;
    const auto start = std::chrono::steady_clock::now();
    const Workload w = uniform_mix_workload(n, cfg.density, cfg.updates, cfg.trace_seed_base + s);
    DynGraph g = DynGraph::build(Permutation::generate(n, cfg.perm_seed_base + s), w.initial);
    RunOptions opts;
    opts.record_level_degree = true;
    const RunReport run = run_trace(g, w.events, opts);
    CellResult& r = results[i];
    for (const MetricsRow& row : run.rows) {
      r.touched.push_back(static_cast<double>(row.m.touched_adj));
      r.changes.push_back(static_cast<double>(row.m.changes));
      if (row.m.easy_case == EasyCase::kNone) {
        r.bound.push_back(static_cast<double>(row.level_degree) *
                          static_cast<double>(row.m.t0_size + row.m.t1_size));
      }
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  });

  ScalingReport report;
  for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    CellResult pooled;
    for (std::size_t s = 0; s < cfg.seeds; ++s) {
      const CellResult& r = results[ni * cfg.seeds + s];
      pooled.touched.insert(pooled.touched.end(), r.touched.begin(), r.touched.end());
      pooled.changes.insert(pooled.changes.end(), r.changes.begin(), r.changes.end());
      pooled.bound.insert(pooled.bound.end(), r.bound.begin(), r.bound.end());
      pooled.seconds += r.seconds;
    }
    ScalingRow row;
    row.n = cfg.n_list[ni];
    row.updates = pooled.touched.size();
    row.hard = pooled.bound.size();
    row.mean_touched = mean(pooled.touched);
    row.p99_touched = percentile(pooled.touched, 0.99);
    row.mean_changes = mean(pooled.changes);
    row.mean_bound = mean(pooled.bound);
    row.p99_bound = percentile(pooled.bound, 0.99);
    row.seconds = pooled.seconds;
    report.rows.push_back(row);
  }
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    const ScalingRow& a = report.rows[i - 1];
    const ScalingRow& b = report.rows[i];
    auto ratio = [](double x, double y) { return x > 0 ? y / x : 0.0; };
    report.ratios.push_back({a.n, b.n, ratio(a.mean_touched, b.mean_touched),
                             ratio(a.mean_changes, b.mean_changes),
                             ratio(a.mean_bound, b.mean_bound)});
  }
  return report;
}

}  // namespace dynmis::suites
