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

#include <set>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"

namespace dynmis {
namespace {

// Replays the events on an edge set and fails on any illegal step.
std::set<std::pair<Vertex, Vertex>> replay(std::span<const Edge> initial,
                                           std::span<const TraceEvent> events,
                                           std::size_t* max_live = nullptr) {
  std::set<std::pair<Vertex, Vertex>> live;
  for (const Edge& e : initial) live.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  std::size_t peak = live.size();
  for (const TraceEvent& e : events) {
    const std::pair key{std::min(e.u, e.v), std::max(e.u, e.v)};
    EXPECT_NE(e.u, e.v);
    if (e.kind == EventKind::kInsert) {
      EXPECT_TRUE(live.insert(key).second) << "insert of present edge";
    } else {
      EXPECT_EQ(live.erase(key), 1u) << "delete of absent edge";
    }
    peak = std::max(peak, live.size());
  }
  if (max_live) *max_live = peak;
  return live;
}

TEST(Trace, ParseSerializeRoundTrip) {
  const std::string text = "n 5\n+ 0 1\n+ 1 2\n? 1\n- 0 1\n";
  const Trace t = parse_trace_string(text);
  EXPECT_EQ(t.n, 5u);
  ASSERT_EQ(t.events.size(), 4u);
  EXPECT_EQ(t.events[2], (TraceEvent{EventKind::kQuery, 1, 0}));
  EXPECT_EQ(serialize_trace(t), text);
  EXPECT_EQ(parse_trace_string(serialize_trace(t)), t);
}

TEST(Trace, CommentsAndBlankLinesIgnored) {
  const Trace t = parse_trace_string("# header\n\nn 3\n  # note\n+ 0 2\r\n\n");
  EXPECT_EQ(t.n, 3u);
  ASSERT_EQ(t.events.size(), 1u);
  EXPECT_EQ(t.events[0], (TraceEvent{EventKind::kInsert, 0, 2}));
}

TEST(Trace, ParseErrorsCarryLineNumber) {
  struct Case {
    const char* text;
    std::size_t line;
  };
  const Case cases[] = {
      {"", 0},
      {"+ 0 1\n", 1},
      {"n 0\n", 1},
      {"n 4\n+ 0 1\n* 1 2\n", 3},
      {"n 4\n+ 0\n", 2},
      {"n 4\n\n- 0 4\n", 3},
      {"n 4\n? 1 2\n", 2},
      {"n 4\n+ a 1\n", 2},
  };
  for (const Case& c : cases) {
    try {
      parse_trace_string(c.text);
      ADD_FAILURE() << "accepted: " << c.text;
    } catch (const TraceParseError& e) {
      EXPECT_EQ(e.line(), c.line) << c.text;
    }
  }
}

TEST(Trace, RngDiffersFromPermutationStream) {
  TraceRng t(42);
  Rng p(42);
  EXPECT_NE(t.next(), p());
}

TEST(Trace, RandomGraphDeterministicAndSorted) {
  TraceRng a(9), b(9);
  const auto ea = random_graph(200, 0.05, a);
  const auto eb = random_graph(200, 0.05, b);
  EXPECT_EQ(ea, eb);
  for (std::size_t i = 0; i < ea.size(); ++i) {
    EXPECT_LT(ea[i].u, ea[i].v);
    if (i > 0) {
      EXPECT_TRUE(std::pair(ea[i - 1].u, ea[i - 1].v) < std::pair(ea[i].u, ea[i].v));
    }
  }
  // 19900 pairs at p = 0.05: mean 995, sd about 31.
  EXPECT_NEAR(static_cast<double>(ea.size()), 995.0, 160.0);
}

TEST(Trace, RandomGraphExtremes) {
  TraceRng rng(1);
  EXPECT_TRUE(random_graph(10, 0.0, rng).empty());
  EXPECT_EQ(random_graph(10, 1.0, rng).size(), 45u);
  EXPECT_TRUE(random_graph(1, 0.5, rng).empty());
}

TEST(Trace, ZeroCountIsEmpty) {
  EXPECT_TRUE(gen_uniform_mix(10, 0, 0.2, 1).empty());
  EXPECT_TRUE(gen_sliding_window(10, 0, 0.2, 1).empty());
}

TEST(Trace, InvalidDensityRejected) {
  for (double d : {0.0, 1.0, -0.5, 1.5}) {
    EXPECT_THROW(gen_uniform_mix(10, 5, d, 1), std::invalid_argument);
    EXPECT_THROW(gen_sliding_window(10, 5, d, 1), std::invalid_argument);
  }
  EXPECT_THROW(gen_uniform_mix(1, 5, 0.2, 1), std::invalid_argument);
  EXPECT_THROW(gen_sliding_window(10, 5, 0.2, 1, 45), std::invalid_argument);
}

TEST(Trace, GeneratorsDeterministic) {
  EXPECT_EQ(gen_uniform_mix(30, 500, 0.1, 7), gen_uniform_mix(30, 500, 0.1, 7));
  EXPECT_NE(gen_uniform_mix(30, 500, 0.1, 7), gen_uniform_mix(30, 500, 0.1, 8));
  EXPECT_EQ(gen_sliding_window(30, 500, 0.1, 7), gen_sliding_window(30, 500, 0.1, 7));
  const Workload a = uniform_mix_workload(40, 0.1, 300, 3);
  const Workload b = uniform_mix_workload(40, 0.1, 300, 3);
  EXPECT_EQ(a.initial, b.initial);
  EXPECT_EQ(a.events, b.events);
}

TEST(Trace, UniformMixLegalAndHoldsTarget) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Workload w = uniform_mix_workload(40, 0.1, 2000, seed);
    const auto live = replay(w.initial, w.events);
    // The count random-walks around the target with steps of one.
    const auto target = static_cast<long>(w.initial.size());
    std::size_t count = w.initial.size();
    for (const TraceEvent& e : w.events) {
      count += e.kind == EventKind::kInsert ? 1 : -1;
      EXPECT_LE(std::labs(static_cast<long>(count) - target), 1);
    }
    EXPECT_EQ(live.size(), count);
  }
}

TEST(Trace, UniformMixWithoutInitialRisesToTarget) {
  const auto events = gen_uniform_mix(20, 200, 0.2, 5);  // target 38
  for (std::size_t i = 0; i < 38; ++i) EXPECT_EQ(events[i].kind, EventKind::kInsert);
  replay({}, events);
}

TEST(Trace, SlidingWindowBoundsLiveEdges) {
  for (std::size_t window : {1u, 5u, 40u}) {
    const auto events = gen_sliding_window(25, 600, 0.1, 11, window);
    std::size_t peak = 0;
    replay({}, events, &peak);
    EXPECT_EQ(peak, window);
    // After the ramp, each insert is followed by the delete of the oldest edge.
    for (std::size_t i = window; i + 1 < events.size(); i += 2) {
      EXPECT_EQ(events[i].kind, EventKind::kDelete);
      EXPECT_EQ(events[i + 1].kind, EventKind::kInsert);
    }
  }
}

TEST(Trace, SlidingWindowDeletesOldestFirst) {
  const auto events = gen_sliding_window(12, 40, 0.2, 4, 3);
  std::vector<TraceEvent> inserted;
  std::size_t next_delete = 0;
  for (const TraceEvent& e : events) {
    if (e.kind == EventKind::kInsert) {
      inserted.push_back(e);
    } else {
      ASSERT_LT(next_delete, inserted.size());
      EXPECT_EQ(e.u, inserted[next_delete].u);
      EXPECT_EQ(e.v, inserted[next_delete].v);
      ++next_delete;
    }
  }
}

}  // namespace
}  // namespace dynmis
