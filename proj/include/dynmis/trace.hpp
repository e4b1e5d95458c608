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

// Update traces: the text format and the workload generators.
//
// Format:
//
//   n <n>
//   + u v      insert edge
//   - u v      delete edge
//   ? v        membership query
//
// Blank lines and lines starting with '#' are ignored.
//
// Generators never look at MIS state, and their random stream is derived from
// the trace seed under a separate domain tag, so a trace seed and a
// permutation seed with the same numeric value still give unrelated streams.

#ifndef DYNMIS_TRACE_HPP_
#define DYNMIS_TRACE_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dynmis/graph_types.hpp"

namespace dynmis {

enum class EventKind : std::uint8_t { kInsert, kDelete, kQuery };

std::string_view event_kind_name(EventKind k);

struct TraceEvent {
  EventKind kind = EventKind::kInsert;
  Vertex u = 0;
  Vertex v = 0;  // unused for queries

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct Trace {
  std::uint32_t n = 0;
  std::vector<TraceEvent> events;

  friend bool operator==(const Trace&, const Trace&) = default;
};

class TraceParseError : public std::runtime_error {
 public:
  TraceParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Throws TraceParseError on a missing header, malformed line or vertex id
/// outside [0, n). Legality of inserts and deletes is not checked here.
Trace parse_trace(std::istream& in);
Trace parse_trace_string(std::string_view text);

void write_trace(std::ostream& out, const Trace& trace);
std::string serialize_trace(const Trace& trace);

/// Random stream for trace generation, independent of any permutation stream.
class TraceRng {
 public:
  explicit TraceRng(std::uint64_t seed);
  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t bound);
  double unit();  // in [0, 1)

 private:
  Rng engine_;
};

/// G(n, p) by geometric skipping; edges in lexicographic order.
std::vector<Edge> random_graph(std::uint32_t n, double p, TraceRng& rng);

/// Holds the target edge count fixed: below it, insert a uniformly random absent pair; above
/// it, delete a uniformly random present pair; at it, flip a fair coin. The
/// target is the size of `initial`, or round(density * n(n-1)/2) when
/// `initial` is empty. Throws std::invalid_argument when density is outside
/// (0, 1) or no pair exists.
std::vector<TraceEvent> gen_uniform_mix(std::uint32_t n, std::size_t count, double density,
                                        std::uint64_t seed, std::span<const Edge> initial = {});

/// Inserts uniformly random absent pairs; once `window` edges are live, each
/// further step deletes the oldest live edge instead. window == 0 means
/// round(density * n(n-1)/2). Throws std::invalid_argument as above.
std::vector<TraceEvent> gen_sliding_window(std::uint32_t n, std::size_t count, double density,
                                           std::uint64_t seed, std::size_t window = 0);

/// An initial G(n, density) plus a uniform-mix event stream holding its edge
/// count, both drawn from one trace seed.
struct Workload {
  std::vector<Edge> initial;
  std::vector<TraceEvent> events;
};
Workload uniform_mix_workload(std::uint32_t n, double density, std::size_t count,
                              std::uint64_t seed);

}  // namespace dynmis

#endif  // DYNMIS_TRACE_HPP_
