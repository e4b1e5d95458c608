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

#include "dynmis/dyngraph.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"

namespace dynmis {
namespace {

std::vector<Edge> random_edges(std::uint32_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> out;
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = a + 1; b < n; ++b) {
      if (coin(rng)) out.push_back({a, b});
    }
  }
  return out;
}

Permutation ranks_of(std::vector<Rank> ranks) { return Permutation::from_ranks(ranks); }

Level expected_level(const DynGraph& g, Rank dom) {
  const int levels = g.levels();
  if (levels == 0) return kFullGraphLevel;
  if (dom == kUndominated) return levels - 1;
  return std::min<Level>(level_of(dom), levels - 1);
}

// Checks every derived field against the current membership bits, which need
// not form a greedy or even maximal set.
void expect_consistent(const DynGraph& g) {
  const auto s = g.to_static();
  for (Vertex v = 0; v < g.size(); ++v) {
    SCOPED_TRACE("vertex " + std::to_string(v));
    Rank dom = g.in_mis(v) ? g.perm().rank(v) : kUndominated;
    for (Vertex w : s.neighbors(v)) {
      if (g.in_mis(w)) dom = std::min(dom, g.perm().rank(w));
    }
    ASSERT_EQ(g.dom_rank(v), dom);
    ASSERT_EQ(g.vertex_level(v), expected_level(g, dom));
    std::set<Rank> relevant;
    for (Vertex w : s.neighbors(v)) {
      if (g.in_mis(w) && g.perm().level_of_vertex(w) <= g.vertex_level(v)) {
        relevant.insert(g.perm().rank(w));
      }
    }
    ASSERT_EQ(g.mis_neighbor_ranks(v), relevant);
    for (Vertex w : s.neighbors(v)) {
      ASSERT_EQ(g.edge_level(v, w), std::min(g.vertex_level(v), g.vertex_level(w)));
    }
  }
}

TEST(DynGraphBuildTest, EdgelessGraphPutsEveryVertexInMis) {
  const auto g = DynGraph::build(Permutation::generate(3, 5), {});
  for (Vertex v = 0; v < 3; ++v) {
    EXPECT_TRUE(g.in_mis(v));
    EXPECT_EQ(g.dom_rank(v), g.perm().rank(v));
  }
  EXPECT_TRUE(g.validate_full().empty());
}

TEST(DynGraphBuildTest, TriangleKeepsOnlyRankOne) {
  const std::vector<Edge> tri{{0, 1}, {1, 2}, {0, 2}};
  const auto g = DynGraph::build(ranks_of({1, 2, 3}), tri);
  EXPECT_TRUE(g.in_mis(0));
  EXPECT_FALSE(g.in_mis(1));
  EXPECT_FALSE(g.in_mis(2));
  EXPECT_EQ(g.dom_rank(1), 1u);
  EXPECT_EQ(g.dom_rank(2), 1u);
}

TEST(DynGraphBuildTest, PathWithMiddleVertexLast) {
  const std::vector<Edge> path{{0, 1}, {1, 2}};
  const auto g = DynGraph::build(ranks_of({1, 3, 2}), path);
  EXPECT_TRUE(g.in_mis(0));
  EXPECT_FALSE(g.in_mis(1));
  EXPECT_TRUE(g.in_mis(2));
}

TEST(DynGraphBuildTest, RejectsMalformedEdges) {
  const std::vector<Edge> loop{{2, 2}};
  EXPECT_THROW(DynGraph::build(Permutation::generate(3, 1), loop), std::invalid_argument);
  const std::vector<Edge> dup{{0, 1}, {1, 0}};
  EXPECT_THROW(DynGraph::build(Permutation::generate(3, 1), dup), std::invalid_argument);
  const std::vector<Edge> out{{0, 3}};
  EXPECT_THROW(DynGraph::build(Permutation::generate(3, 1), out), std::invalid_argument);
}

TEST(DynGraphBuildTest, RandomBuildsValidate) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::uint32_t n = 20 + static_cast<std::uint32_t>(seed) * 7;
    const auto g = DynGraph::build(Permutation::generate(n, seed), random_edges(n, 0.1, seed));
    EXPECT_EQ(g.validate_full(), std::vector<std::string>{});
    expect_consistent(g);
  }
}

TEST(DynGraphBuildTest, SingleVertex) {
  const auto g = DynGraph::build(Permutation::generate(1, 0), {});
  EXPECT_TRUE(g.in_mis(0));
  EXPECT_EQ(g.vertex_level(0), kFullGraphLevel);
  EXPECT_TRUE(g.validate_full().empty());
}

TEST(NeighborsInLevelTest, IsolatedVertexHasNone) {
  const std::vector<Edge> edges{{1, 2}};
  const auto g = DynGraph::build(ranks_of({4, 1, 2, 3}), edges);
  ASSERT_GE(g.vertex_level(0), 0);
  EXPECT_TRUE(g.neighbors_in_level(0, 0).empty());
}

TEST(NeighborsInLevelTest, MatchesMembershipFilter) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g =
        DynGraph::build(Permutation::generate(16, seed), random_edges(16, 0.3, seed + 100));
    const auto s = g.to_static();
    for (Level k = 0; k < g.levels(); ++k) {
      const auto residual = oracle::residual_vertices(s, g.perm(), Rank{1} << k);
      const std::set<Vertex> in_k(residual.begin(), residual.end());
      for (Vertex v = 0; v < 16; ++v) {
        if (!in_k.contains(v)) {
          EXPECT_THROW(g.neighbors_in_level(v, k), StructuralError);
          continue;
        }
        auto got = g.neighbors_in_level(v, k);
        std::sort(got.begin(), got.end());
        std::vector<Vertex> want;
        for (Vertex w : s.neighbors(v)) {
          if (in_k.contains(w)) want.push_back(w);
        }
        EXPECT_EQ(got, want);
        EXPECT_EQ(g.level_degree(v, k), want.size());
      }
    }
  }
}

TEST(NeighborsInLevelTest, RejectsLevelOutOfRange) {
  const auto g = DynGraph::build(Permutation::generate(8, 1), {});
  EXPECT_THROW(g.neighbors_in_level(0, -1), StructuralError);
  EXPECT_THROW(g.neighbors_in_level(0, g.levels()), StructuralError);
}

TEST(SetMisStatusTest, SameStatusIsNoop) {
  auto g = DynGraph::build(Permutation::generate(5, 2), random_edges(5, 0.5, 2));
  const std::string before = g.dump();
  for (Vertex v = 0; v < 5; ++v) EXPECT_TRUE(g.set_mis_status(v, g.in_mis(v)).empty());
  EXPECT_EQ(g.dump(), before);
}

TEST(SetMisStatusTest, PathRepairTakesMinimumOfNewNeighbors) {
  // u=0, v=1, w=2 on a path; v has rank 1 so M = {v}.
  const std::vector<Edge> path{{0, 1}, {1, 2}};
  auto g = DynGraph::build(ranks_of({2, 1, 3}), path);
  ASSERT_TRUE(g.in_mis(1));
  g.set_mis_status(1, false);
  g.set_mis_status(0, true);
  g.set_mis_status(2, true);
  EXPECT_EQ(g.dom_rank(1), 2u);
  expect_consistent(g);
  EXPECT_FALSE(g.validate_full().empty());  // {u, w} is not the greedy set
}

TEST(SetMisStatusTest, JoiningNextToMisVertexThrows) {
  const std::vector<Edge> edge{{0, 1}};
  auto g = DynGraph::build(ranks_of({1, 2}), edge);
  EXPECT_THROW(g.set_mis_status(1, true), StructuralError);
}

TEST(SetMisStatusTest, ReportsChangedNeighbors) {
  const std::vector<Edge> star{{0, 1}, {0, 2}, {0, 3}};
  auto g = DynGraph::build(ranks_of({4, 1, 2, 3}), star);
  // Leaves are in M, the center is dominated by rank 1.
  auto changes = g.set_mis_status(1, false);
  ASSERT_EQ(changes.size(), 1u);
  EXPECT_EQ(changes[0], (DomChange{0, 1, 2}));
  changes = g.set_mis_status(1, true);
  ASSERT_EQ(changes.size(), 1u);
  EXPECT_EQ(changes[0], (DomChange{0, 2, 1}));
  EXPECT_TRUE(g.validate_full().empty());
}

// Random toggles that keep M independent; every derived field must track
// the bits exactly.
TEST(SetMisStatusTest, RandomTogglesStayConsistent) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::uint32_t n = 40;
    auto g = DynGraph::build(Permutation::generate(n, seed), random_edges(n, 0.15, seed));
    std::mt19937_64 rng(seed + 1);
    for (int step = 0; step < 300; ++step) {
      const auto v = static_cast<Vertex>(rng() % n);
      if (g.in_mis(v)) {
        g.set_mis_status(v, false);
      } else {
        bool blocked = false;
        const auto s = g.to_static();
        for (Vertex w : s.neighbors(v)) blocked = blocked || g.in_mis(w);
        if (!blocked) g.set_mis_status(v, true);
      }
      ASSERT_NO_FATAL_FAILURE(expect_consistent(g));
    }
    // Restore the greedy set in rank order; the result must validate.
    for (Rank r = 1; r <= n; ++r) {
      const Vertex v = g.perm().vertex_at(r);
      if (g.in_mis(v)) g.set_mis_status(v, false);
    }
    const auto s = g.to_static();
    const auto greedy = oracle::greedy_mis(s, g.perm());
    for (Rank r = 1; r <= n; ++r) {
      const Vertex v = g.perm().vertex_at(r);
      if (greedy[v]) g.set_mis_status(v, true);
    }
    EXPECT_EQ(g.validate_full(), std::vector<std::string>{});
  }
}

TEST(RawEdgeTest, InsertThenDeleteRestoresState) {
  auto g = DynGraph::build(Permutation::generate(30, 9), random_edges(30, 0.2, 9));
  const auto s = g.to_static();
  for (Vertex a = 0; a < 30; ++a) {
    for (Vertex b = a + 1; b < 30; ++b) {
      if (s.has_edge(a, b)) continue;
      const std::string before = g.dump();
      const Level l = g.insert_edge_raw(a, b);
      EXPECT_EQ(l, std::min(g.vertex_level(a), g.vertex_level(b)));
      EXPECT_EQ(g.delete_edge_raw(b, a), l);
      EXPECT_EQ(g.dump(), before);
    }
  }
  expect_consistent(g);
}

TEST(RawEdgeTest, TopLevelForLateEndpoints) {
  // Ranks 7 and 8 of n=8 are isolated, so both endpoints sit at level L-1.
  auto g = DynGraph::build(ranks_of({1, 2, 3, 4, 5, 6, 7, 8}), {});
  EXPECT_EQ(g.insert_edge_raw(6, 7), g.levels() - 1);
}

TEST(RawEdgeTest, RejectsIllegalOps) {
  const std::vector<Edge> edge{{0, 1}};
  auto g = DynGraph::build(Permutation::generate(3, 0), edge);
  EXPECT_THROW(g.insert_edge_raw(0, 1), std::invalid_argument);
  EXPECT_THROW(g.delete_edge_raw(1, 2), std::invalid_argument);
  EXPECT_THROW(g.insert_edge_raw(2, 2), std::invalid_argument);
  EXPECT_THROW(g.insert_edge_raw(0, 5), std::invalid_argument);
}

TEST(RawEdgeTest, BucketLevelMatchesBruteForceScan) {
  auto g = DynGraph::build(Permutation::generate(64, 4), random_edges(64, 0.1, 4));
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto a = static_cast<Vertex>(rng() % 64);
    const auto b = static_cast<Vertex>(rng() % 64);
    if (a == b || g.has_edge(a, b)) continue;
    const Level l = g.insert_edge_raw(a, b);
    const Rank d = std::min(g.dom_rank(a), g.dom_rank(b));
    Level want = kFullGraphLevel;
    for (Level i2 = 0; i2 < g.levels(); ++i2) {
      if (d > (Rank{1} << i2)) want = i2;
    }
    EXPECT_EQ(l, want);
    g.delete_edge_raw(a, b);
  }
}

TEST(ValidateTest, FlippedBitIsReported) {
  auto g = DynGraph::build(Permutation::generate(20, 3), random_edges(20, 0.3, 3));
  ASSERT_TRUE(g.validate_full().empty());
  Vertex target = 0;
  while (g.in_mis(target)) ++target;
  g.set_mis_flag(target, true);
  const auto bad = g.validate_full();
  EXPECT_FALSE(bad.empty());
  bool independence = false;
  for (const auto& msg : bad) independence = independence || msg.find("independence") == 0;
  EXPECT_TRUE(independence);
}

TEST(DumpTest, DeterministicFormat) {
  const std::vector<Edge> path{{1, 2}, {0, 1}};
  const auto g = DynGraph::build(ranks_of({1, 3, 2}), path);
  EXPECT_EQ(g.dump(),
            "n 3 seed 0 m 2\n"
            "0 1\n"
            "1 2\n"
            "0 1 1 1\n"
            "1 3 0 1\n"
            "2 2 1 2\n");
}

}  // namespace
}  // namespace dynmis
