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

#include "dynmis/trace.hpp"

#include <charconv>
#include <cmath>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace dynmis {

namespace {

constexpr std::uint64_t kTraceStreamTag = 0x7472616365ull;  // "trace"

std::uint64_t pair_count(std::uint32_t n) {
  return static_cast<std::uint64_t>(n) * (n - 1) / 2;
}

// Live edge set with O(1) uniform sampling.
class EdgePool {
 public:
  explicit EdgePool(std::span<const Edge> initial) {
    for (const Edge& e : initial) add(e.normalized());
  }
  std::size_t size() const { return list_.size(); }
  bool contains(Vertex a, Vertex b) const { return index_.contains(edge_key(a, b)); }
  void add(Edge e) {
    index_.emplace(edge_key(e.u, e.v), list_.size());
    list_.push_back(e);
  }
  Edge remove_at(std::size_t i) {
    const Edge e = list_[i];
    index_.erase(edge_key(e.u, e.v));
    if (i + 1 != list_.size()) {
      list_[i] = list_.back();
      index_[edge_key(list_[i].u, list_[i].v)] = i;
    }
    list_.pop_back();
    return e;
  }
  void remove(Edge e) { remove_at(index_.at(edge_key(e.u, e.v))); }

 private:
  std::vector<Edge> list_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

Edge random_absent_pair(std::uint32_t n, const EdgePool& pool, TraceRng& rng) {
  while (true) {
    const auto a = static_cast<Vertex>(rng.below(n));
    auto b = static_cast<Vertex>(rng.below(n - 1));
    if (b >= a) ++b;
    if (!pool.contains(a, b)) return Edge{a, b}.normalized();
  }
}

void check_density(std::uint32_t n, double density) {
  if (!(density > 0.0 && density < 1.0)) {
    throw std::invalid_argument("density must lie in (0, 1)");
  }
  if (n < 2) throw std::invalid_argument("need at least two vertices to generate edges");
}

bool parse_uint(std::string_view tok, std::uint64_t& out) {
  if (tok.empty()) return false;
  const auto* end = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && p == end;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::string_view event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::kInsert:
      return "insert";
    case EventKind::kDelete:
      return "delete";
    case EventKind::kQuery:
      return "query";
  }
  return "insert";
}

Trace parse_trace(std::istream& in) {
  Trace t;
  bool have_header = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = split(line);
    if (tok.empty() || tok[0].front() == '#') continue;
    if (!have_header) {
      std::uint64_t n = 0;
      if (tok.size() != 2 || tok[0] != "n" || !parse_uint(tok[1], n) || n == 0 ||
          n > UINT32_MAX) {
        throw TraceParseError(lineno, "expected header \"n <n>\" with n >= 1");
      }
      t.n = static_cast<std::uint32_t>(n);
      have_header = true;
      continue;
    }
    TraceEvent e;
    std::size_t arity = 0;
    if (tok[0] == "+") {
      e.kind = EventKind::kInsert;
      arity = 2;
    } else if (tok[0] == "-") {
      e.kind = EventKind::kDelete;
      arity = 2;
    } else if (tok[0] == "?") {
      e.kind = EventKind::kQuery;
      arity = 1;
    } else {
      throw TraceParseError(lineno, "unknown event \"" + std::string(tok[0]) + "\"");
    }
    if (tok.size() != arity + 1) throw TraceParseError(lineno, "wrong number of fields");
    std::uint64_t ids[2] = {0, 0};
    for (std::size_t i = 0; i < arity; ++i) {
      if (!parse_uint(tok[i + 1], ids[i]) || ids[i] >= t.n) {
        throw TraceParseError(lineno, "vertex id \"" + std::string(tok[i + 1]) +
                                          "\" outside [0, n)");
      }
    }
    e.u = static_cast<Vertex>(ids[0]);
    e.v = static_cast<Vertex>(ids[1]);
    t.events.push_back(e);
  }
  if (!have_header) throw TraceParseError(lineno, "missing header \"n <n>\"");
  return t;
}

Trace parse_trace_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_trace(in);
}

void write_trace(std::ostream& out, const Trace& trace) {
  out << "n " << trace.n << '\n';
  for (const TraceEvent& e : trace.events) {
    switch (e.kind) {
      case EventKind::kInsert:
        out << "+ " << e.u << ' ' << e.v << '\n';
        break;
      case EventKind::kDelete:
        out << "- " << e.u << ' ' << e.v << '\n';
        break;
      case EventKind::kQuery:
        out << "? " << e.u << '\n';
        break;
    }
  }
}

std::string serialize_trace(const Trace& trace) {
  std::ostringstream out;
  write_trace(out, trace);
  return out.str();
}

TraceRng::TraceRng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(kTraceStreamTag),
                    static_cast<std::uint32_t>(kTraceStreamTag >> 32)};
  engine_.seed(seq);
}

std::uint64_t TraceRng::below(std::uint64_t bound) { return uniform_below(engine_, bound); }

double TraceRng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::vector<Edge> random_graph(std::uint32_t n, double p, TraceRng& rng) {
  std::vector<Edge> out;
  if (n < 2 || p <= 0.0) return out;
  const std::uint64_t total = pair_count(n);
  if (p >= 1.0) {
    for (Vertex a = 0; a < n; ++a) {
      for (Vertex b = a + 1; b < n; ++b) out.push_back({a, b});
    }
    return out;
  }
  out.reserve(static_cast<std::size_t>(static_cast<double>(total) * p * 1.1) + 16);
  const double log_q = std::log1p(-p);
  // Walk the pairs in lexicographic order, skipping geometric gaps.
  std::uint64_t idx = 0;
  Vertex a = 0;
  std::uint64_t row_start = 0;  // index of pair (a, a + 1)
  while (true) {
    const double skip = std::floor(std::log1p(-rng.unit()) / log_q);
    if (skip >= static_cast<double>(total - idx)) break;
    idx += static_cast<std::uint64_t>(skip);
    while (idx >= row_start + (n - 1 - a)) {
      row_start += n - 1 - a;
      ++a;
    }
    out.push_back({a, static_cast<Vertex>(a + 1 + (idx - row_start))});
    ++idx;
    if (idx >= total) break;
  }
  return out;
}

std::vector<TraceEvent> gen_uniform_mix(std::uint32_t n, std::size_t count, double density,
                                        std::uint64_t seed, std::span<const Edge> initial) {
  std::vector<TraceEvent> out;
  if (count == 0) return out;
  check_density(n, density);
  TraceRng rng(seed);
  EdgePool pool(initial);
  const std::uint64_t total = pair_count(n);
  const auto target =
      initial.empty()
          ? static_cast<std::uint64_t>(std::llround(density * static_cast<double>(total)))
          : initial.size();
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    bool insert = pool.size() < target || (pool.size() == target && (rng.next() & 1) == 0);
    if (pool.size() == 0) insert = true;
    if (pool.size() == total) insert = false;
    if (insert) {
      const Edge e = random_absent_pair(n, pool, rng);
      pool.add(e);
      out.push_back({EventKind::kInsert, e.u, e.v});
    } else {
      const Edge e = pool.remove_at(rng.below(pool.size()));
      out.push_back({EventKind::kDelete, e.u, e.v});
    }
  }
  return out;
}

std::vector<TraceEvent> gen_sliding_window(std::uint32_t n, std::size_t count, double density,
                                           std::uint64_t seed, std::size_t window) {
  std::vector<TraceEvent> out;
  if (count == 0) return out;
  check_density(n, density);
  const std::uint64_t total = pair_count(n);
  if (window == 0) {
    window = static_cast<std::size_t>(std::llround(density * static_cast<double>(total)));
  }
  if (window == 0 || window >= total) {
    throw std::invalid_argument("window must lie in [1, n(n-1)/2)");
  }
  TraceRng rng(seed);
  EdgePool pool({});
  std::deque<Edge> fifo;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (fifo.size() >= window) {
      const Edge e = fifo.front();
      fifo.pop_front();
      pool.remove(e);
      out.push_back({EventKind::kDelete, e.u, e.v});
    } else {
      const Edge e = random_absent_pair(n, pool, rng);
      pool.add(e);
      fifo.push_back(e);
      out.push_back({EventKind::kInsert, e.u, e.v});
    }
  }
  return out;
}

Workload uniform_mix_workload(std::uint32_t n, double density, std::size_t count,
                              std::uint64_t seed) {
  TraceRng rng(seed);
  Workload w;
  w.initial = random_graph(n, density, rng);
  w.events = gen_uniform_mix(n, count, density, rng.next(), w.initial);
  return w;
}

}  // namespace dynmis
