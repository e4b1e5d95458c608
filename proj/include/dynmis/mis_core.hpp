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

// Edge-update path for the greedy MIS.
//
// An update between u and v (rank(u) < rank(v)) either falls into one of the
// easy cases, where only v's position in the residual subgraphs moves, or
// requires the influenced set S of v. In the hard case the update proceeds as
//
//   1. apply the edge to the adjacency buckets only;
//   2. find S against the old MIS;
//   3. rerun greedy on S (deletion) or S minus v (insertion);
//   4. snapshot every leaver's neighbors at or above its level;
//   5. set all membership bits to their final values;
//   6. move v to its new domination rank;
//   7. repair the neighbors of every changed vertex in ascending rank.

#ifndef DYNMIS_MIS_CORE_HPP_
#define DYNMIS_MIS_CORE_HPP_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "dynmis/dyngraph.hpp"

namespace dynmis {

enum class EasyCase : std::uint8_t { kNone, kI, kII, kIII };

/// "none", "i", "ii" or "iii".
std::string_view easy_case_name(EasyCase c);

struct ChangeSet {
  std::vector<Vertex> entered;
  std::vector<Vertex> left;
  std::vector<Vertex> influenced;  // ascending by rank; empty in easy cases
  EasyCase easy_case = EasyCase::kNone;

  std::size_t size() const { return entered.size() + left.size(); }
};

struct UpdateMetrics {
  std::size_t s_size = 0;
  std::size_t t0_size = 0;
  std::size_t t1_size = 0;   // vertices whose membership was recomputed
  std::size_t t1_moved = 0;  // of those, vertices whose level changed
  std::uint64_t touched_adj = 0;
  std::size_t changes = 0;
  EasyCase easy_case = EasyCase::kNone;
  Level level_a = kFullGraphLevel;
  Level level_b = kFullGraphLevel;
  std::uint64_t elapsed_ns = 0;
};

/// Which easy case applies to an update between u and v, with
/// rank(u) < rank(v), judged on the state before the update. kNone means the
/// influenced set must be computed. Throws StructuralError for a deletion
/// between two MIS vertices.
EasyCase classify_update(const DynGraph& g, Vertex u, Vertex v, UpdateKind kind);

struct InfluenceResult {
  std::vector<Vertex> s;       // ascending by rank
  std::vector<Vertex> t0_log;  // every vertex ever queued, in queue order
};

/// Influenced set of v for a hard-case update whose edge has already been
/// applied with insert_edge_raw or delete_edge_raw; membership and
/// domination ranks still describe the old MIS. b is the level of v's rank.
/// Throws StructuralError if an expanded MIS vertex is missing from its own
/// level or the queue yields ranks out of order.
InfluenceResult find_influenced_set(const DynGraph& g, Vertex u, Vertex v, Level b);

/// Greedy over s (deletion) or s minus v (insertion) in rank order, using
/// adjacency of the current edge set. Read-only; returns the status changes.
ChangeSet rebuild_mis_on_influenced(const DynGraph& g, std::span<const Vertex> s, Vertex v,
                                    UpdateKind kind);

struct StatusChange {
  Vertex vertex;
  bool joins;
  // Leavers only: neighbors at or above the leaver's level, captured before
  // any domination rank moved.
  std::vector<Vertex> snapshot;
};

struct FixResult {
  std::size_t recomputed = 0;
  std::size_t moved = 0;
};

/// Repairs domination ranks and buckets around each changed vertex, in the
/// given order (ascending rank). Membership bits must already hold their final
/// values. With `check_levels`, each joiner's neighborhood is compared with
/// the definitional residual subgraph at the joiner's level when the joiner is
/// processed; a mismatch throws StructuralError.
FixResult fix_subgraphs(DynGraph& g, std::span<const StatusChange> changed,
                        bool check_levels = false);

struct UpdateResult {
  ChangeSet changes;
  UpdateMetrics metrics;
};

/// Inserts or deletes the edge (a, b) and restores the greedy MIS and every
/// residual subgraph. Throws std::invalid_argument for a duplicate insert, a
/// missing delete, a self-loop or an endpoint out of range. With `verify`,
/// also checks that no joiner conflicts with an MIS vertex outside S, the
/// per-joiner level invariant, and validate_full afterwards; failures throw
/// StructuralError.
UpdateResult update(DynGraph& g, Vertex a, Vertex b, UpdateKind kind, bool verify = false);

inline bool is_in_mis(const DynGraph& g, Vertex v) { return g.in_mis(v); }

}  // namespace dynmis

#endif  // DYNMIS_MIS_CORE_HPP_
