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

#include "dynmis/harness.hpp"

#include <fstream>
#include <ostream>

#include "dynmis/oracle.hpp"

namespace dynmis {

namespace {

std::string describe(const TraceEvent& e) {
  return std::string(event_kind_name(e.kind)) + " " + std::to_string(e.u) + " " +
         std::to_string(e.v);
}

}  // namespace

RunReport run_trace(DynGraph& g, std::span<const TraceEvent> events, const RunOptions& opts) {
  RunReport report;
  report.rows.reserve(events.size());
  const std::size_t every = opts.check_every == 0 ? 1 : opts.check_every;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const TraceEvent& e = events[i];
    if (e.kind == EventKind::kQuery) {
      report.queries.emplace_back(e.u, g.in_mis(e.u));
      continue;
    }
    const UpdateKind kind = e.kind == EventKind::kInsert ? UpdateKind::kInsert : UpdateKind::kDelete;
    const bool legal = e.u != e.v && e.u < g.size() && e.v < g.size() &&
                       (kind == UpdateKind::kInsert) != g.has_edge(e.u, e.v);
    if (!legal) {
      const std::string msg = "illegal event " + std::to_string(i) + ": " + describe(e);
      if (!opts.skip_illegal) throw IllegalEventError(msg, i);
      report.skipped.emplace_back(i, msg);
      continue;
    }

    const bool checked = opts.verify && (i + 1) % every == 0;
    std::vector<Vertex> expected_s;
    if (checked) {
      const oracle::StaticGraph before = g.to_static();
      oracle::Membership mis_old(g.size());
      for (Vertex x = 0; x < g.size(); ++x) mis_old[x] = g.in_mis(x);
      expected_s = oracle::influenced_set_bruteforce(before.with_update(kind, e.u, e.v),
                                                     g.perm(), mis_old, e.u, e.v);
    }

    UpdateResult r;
    try {
      r = update(g, e.u, e.v, kind, checked);
    } catch (const StructuralError& ex) {
      throw VerificationError("event " + std::to_string(i) + " (" + describe(e) +
                                  "): " + ex.what(),
                              i);
    }
    if (checked) {
      ++report.checks;
      if (r.changes.influenced != expected_s) {
        throw VerificationError("event " + std::to_string(i) + " (" + describe(e) +
                                    "): influenced set has " +
                                    std::to_string(r.changes.influenced.size()) +
                                    " vertices, brute force has " +
                                    std::to_string(expected_s.size()),
                                i);
      }
    }

    MetricsRow row{i, e.kind, e.u, e.v, r.metrics, 0};
    if (opts.record_level_degree && r.metrics.easy_case == EasyCase::kNone) {
      row.level_degree = g.max_level_degree(r.metrics.level_b);
    }
    report.rows.push_back(row);
  }
  return report;
}

void write_metrics_header(std::ostream& out) {
  out << "event_index,kind,u,v,easy_case,level_a,level_b,s_size,t0_size,t1_size,"
         "touched_adj,changes,elapsed_ns\n";
}

void write_metrics_row(std::ostream& out, const MetricsRow& row) {
  const UpdateMetrics& m = row.m;
  out << row.event_index << ',' << event_kind_name(row.kind) << ',' << row.u << ',' << row.v
      << ',' << easy_case_name(m.easy_case) << ',' << m.level_a << ',' << m.level_b << ','
      << m.s_size << ',' << m.t0_size << ',' << m.t1_size << ',' << m.touched_adj << ','
      << m.changes << ',' << m.elapsed_ns << '\n';
}

void write_metrics_csv(std::ostream& out, std::span<const MetricsRow> rows) {
  write_metrics_header(out);
  for (const MetricsRow& row : rows) write_metrics_row(out, row);
}

std::filesystem::path write_repro_bundle(const std::filesystem::path& dir,
                                         const ReproBundle& bundle) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream f(dir / name);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    return f;
  };
  {
    auto f = open("repro.txt");
    f << "perm_seed " << bundle.perm_seed << '\n'
      << "failing_event " << bundle.failing_event << '\n'
      << "message " << bundle.message << '\n';
  }
  {
    auto f = open("initial.dump");
    f << bundle.initial_dump;
  }
  {
    auto f = open("trace.txt");
    write_trace(f, bundle.prefix);
  }
  return dir;
}

}  // namespace dynmis
