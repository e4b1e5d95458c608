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

#ifndef DYNMIS_HARNESS_HPP_
#define DYNMIS_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynmis/dyngraph.hpp"
#include "dynmis/mis_core.hpp"
#include "dynmis/trace.hpp"

namespace dynmis {

/// An insert of a present edge, a delete of an absent one, or a self-loop.
class IllegalEventError : public std::invalid_argument {
 public:
  IllegalEventError(const std::string& what, std::size_t event_index)
      : std::invalid_argument(what), event_index_(event_index) {}
  std::size_t event_index() const { return event_index_; }

 private:
  std::size_t event_index_;
};

struct RunOptions {
  bool verify = false;
  // With verify, every check_every-th event runs the full checks.
  std::size_t check_every = 1;
  // Illegal inserts and deletes are skipped and reported instead of fatal.
  bool skip_illegal = false;
  // Hard-case rows also record the max degree of G_b after the update.
  bool record_level_degree = false;
};

struct MetricsRow {
  std::size_t event_index = 0;
  EventKind kind = EventKind::kInsert;
  Vertex u = 0;
  Vertex v = 0;
  UpdateMetrics m;
  std::size_t level_degree = 0;  // Max degree of G_b; only with record_level_degree
};

struct RunReport {
  std::vector<MetricsRow> rows;
  std::vector<std::pair<std::size_t, std::string>> skipped;
  std::vector<std::pair<Vertex, bool>> queries;
  std::size_t checks = 0;
};

/// Replays the events against g. A checked event runs the update in
/// verification mode (validate_full afterwards) and compares the influenced
/// set with the brute-force recurrence on the pre-update state. A mismatch
/// throws VerificationError; an illegal event without skip_illegal throws
/// IllegalEventError. Both carry the event index.
RunReport run_trace(DynGraph& g, std::span<const TraceEvent> events, const RunOptions& opts);

/// The columns are event_index,kind,u,v,easy_case,level_a,level_b,s_size,t0_size,t1_size,
/// touched_adj,changes,elapsed_ns.
void write_metrics_header(std::ostream& out);
void write_metrics_row(std::ostream& out, const MetricsRow& row);
void write_metrics_csv(std::ostream& out, std::span<const MetricsRow> rows);

/// Everything needed to replay a failing run: the permutation seed, the
/// initial snapshot and the trace prefix up to and including the failing
/// event.
struct ReproBundle {
  std::uint64_t perm_seed = 0;
  std::string initial_dump;
  Trace prefix;
  std::size_t failing_event = 0;
  std::string message;
};

/// Writes repro.txt (seed, failing index, message), initial.dump and
/// trace.txt under dir, creating it. Returns dir.
std::filesystem::path write_repro_bundle(const std::filesystem::path& dir,
                                         const ReproBundle& bundle);

}  // namespace dynmis

#endif  // DYNMIS_HARNESS_HPP_
