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

#ifndef DYNMIS_DYNGRAPH_HPP_
#define DYNMIS_DYNGRAPH_HPP_

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dynmis/graph_types.hpp"
#include "dynmis/oracle.hpp"
#include "dynmis/permutation.hpp"

namespace dynmis {

/// Domination rank of a vertex that no MIS vertex dominates. Only reachable
/// while an update is in flight.
inline constexpr Rank kUndominated = std::numeric_limits<Rank>::max();

/// A neighbor whose domination rank changed during a status toggle.
struct DomChange {
  Vertex vertex;
  Rank old_dom;
  Rank new_dom;
  friend bool operator==(const DomChange&, const DomChange&) = default;
};

/// Graph plus greedy MIS plus the nested residual subgraphs G_0 ⊇ … ⊇ G_{L-1}.
///
/// The residual subgraphs are not stored as copies. Each vertex carries its
/// domination rank, the smallest rank of an MIS vertex in its closed
/// neighborhood; v lies in V_i exactly when that rank exceeds 2^i. The
/// vertex level is the largest such i (or -1). Each edge lives in one bucket
/// on both endpoints, at the smaller of the two endpoint levels, so the
/// neighbors of v inside V_k are the concatenation of v's buckets k..L-1.
///
/// Each vertex also keeps the ordered ranks of its *relevant* MIS neighbors:
/// MIS neighbors z whose own level is at most the vertex's level. The
/// minimal MIS neighbor is always relevant, so the domination rank is the
/// minimum of this set (and of the vertex's own rank when it is in the MIS).
/// Restricting to relevant neighbors keeps every status change inside the
/// V_k neighborhood of the changed vertex.
class DynGraph {
 public:
  /// Runs the static greedy pass in rank order and derives every index.
  /// Throws std::invalid_argument on self-loops, duplicate pairs or endpoints
  /// outside [0, n).
  static DynGraph build(Permutation perm, std::span<const Edge> initial_edges);

  std::uint32_t size() const { return perm_.size(); }
  int levels() const { return levels_; }
  const Permutation& perm() const { return perm_; }
  std::size_t num_edges() const { return edges_.size(); }

  bool in_mis(Vertex v) const { return in_mis_[v] != 0; }
  Rank dom_rank(Vertex v) const { return dom_[v]; }
  /// Largest i with v in V_i, or -1.
  Level vertex_level(Vertex v) const { return level_[v]; }
  /// v in V_k, for k in [0, L-1].
  bool in_level(Vertex v, Level k) const { return level_[v] >= k; }
  const std::set<Rank>& mis_neighbor_ranks(Vertex v) const { return mis_nbrs_[v]; }

  bool has_edge(Vertex a, Vertex b) const;
  /// Bucket level of an existing edge.
  std::optional<Level> edge_level(Vertex a, Vertex b) const;
  std::size_t degree(Vertex v) const;
  std::span<const Vertex> bucket(Vertex v, Level level) const {
    return buckets_[v][bucket_index(level)];
  }
  /// Number of neighbors of v inside V_k (v must be in V_k).
  std::size_t level_degree(Vertex v, Level k) const;
  /// Max degree of G_k.
  std::size_t max_level_degree(Level k) const;

  /// Exactly the neighbors w of v with dom_rank(w) > 2^k. Throws
  /// StructuralError when v is not in V_k or k is outside [0, L-1].
  std::vector<Vertex> neighbors_in_level(Vertex v, Level k) const;

  /// Calls f(w) for every neighbor w of v at level >= k. Unlike
  /// neighbors_in_level, v itself may sit below level k; the scan then reads
  /// v's own top bucket and filters, costing v's degree in G_{level(v)}.
  template <typename F>
  void for_each_neighbor_at_least(Vertex v, Level k, F&& f) const;

  /// Edges sorted lexicographically with u < v.
  std::vector<Edge> edge_list() const;
  oracle::StaticGraph to_static() const;

  /// Toggles v's membership from a consistent state and repairs every
  /// neighbor. Returns the neighbors whose domination rank changed. Throws
  /// StructuralError if joining would make v adjacent to an MIS vertex.
  std::vector<DomChange> set_mis_status(Vertex v, bool status);

  /// Adds or removes the edge in the buckets and edge index only, at the
  /// level derived from the current domination ranks. MIS membership,
  /// domination ranks and neighbor sets are untouched. Returns the bucket
  /// level used. Throws std::invalid_argument on self-loops, duplicate
  /// inserts, missing deletes or endpoints out of range.
  Level insert_edge_raw(Vertex a, Vertex b);
  Level delete_edge_raw(Vertex a, Vertex b);

  // Low-level repair steps used by the update path. They keep buckets and
  // levels consistent with the stored domination ranks but do not by
  // themselves restore the global invariants.

  /// Overwrites the membership bit only.
  void set_mis_flag(Vertex v, bool status) { in_mis_[v] = status ? 1 : 0; }
  /// Records MIS vertex z as a relevant neighbor of w if z's level does not
  /// exceed w's, then recomputes w. Returns whether the rank was recorded.
  bool link_mis_neighbor(Vertex w, Vertex z);
  /// Forgets z as an MIS neighbor of w and recomputes w if z was recorded.
  void unlink_mis_neighbor(Vertex w, Vertex z);
  /// Recomputes w's domination rank from its own membership and its neighbor
  /// set, pulling in newly relevant MIS neighbors when w's level rises, and
  /// moves w's incident bucket entries. Returns the rank before and after.
  DomChange recompute(Vertex w);

  /// Adjacency entries examined since construction; the update path's work
  /// counter.
  std::uint64_t work() const { return work_; }
  /// Adds adjacency work done by callers outside this class, such as pairwise
  /// edge probes.
  void charge(std::uint64_t units) const { work_ += units; }

  /// Deterministic text form: "n <n> seed <seed> m <m>", then one "u v" line
  /// per edge in lexicographic order, then one "v rank in_mis dom_rank" line
  /// per vertex.
  std::string dump() const;

  /// Rebuilds a structure from dump() output, using the recorded ranks and
  /// seed. Throws std::invalid_argument if the text is malformed or its
  /// membership and domination columns disagree with the rebuilt state.
  static DynGraph from_dump(std::string_view text);

  /// Recomputes the MIS and every V_i from scratch and lists each mismatch.
  /// An empty result means the structure is consistent.
  std::vector<std::string> validate_full() const;

 private:
  struct EdgeSlot {
    Level level;
    std::uint32_t pos_lo;  // position in the smaller endpoint's bucket
    std::uint32_t pos_hi;
  };

  explicit DynGraph(Permutation perm);

  std::size_t bucket_index(Level level) const {
    return static_cast<std::size_t>(level + 1);
  }
  Level level_of_dom(Rank d) const;
  Level own_level(Vertex v) const { return perm_.level_of_vertex(v); }
  Level pair_level(Vertex a, Vertex b) const {
    return std::min(level_[a], level_[b]);
  }

  void place_edge(Vertex a, Vertex b, Level level);
  void unplace_edge(Vertex a, Vertex b, const EdgeSlot& slot);
  void move_edge(Vertex a, Vertex b, Level to);
  void remove_from_bucket(Vertex owner, Level level, std::uint32_t pos);
  void prune_above(Vertex w, Level level);
  void relocate(Vertex w, Level from, Level to);

  Permutation perm_;
  int levels_ = 0;
  std::vector<std::uint8_t> in_mis_;
  std::vector<Rank> dom_;
  std::vector<Level> level_;
  std::vector<std::set<Rank>> mis_nbrs_;
  // buckets_[v][level + 1]
  std::vector<std::vector<std::vector<Vertex>>> buckets_;
  std::unordered_map<std::uint64_t, EdgeSlot> edges_;
  mutable std::uint64_t work_ = 0;
};

template <typename F>
void DynGraph::for_each_neighbor_at_least(Vertex v, Level k, F&& f) const {
  const Level own = level_[v];
  if (own >= k) {
    for (Level l = std::max<Level>(k, kFullGraphLevel); l <= own; ++l) {
      for (Vertex w : buckets_[v][bucket_index(l)]) {
        ++work_;
        f(w);
      }
    }
    return;
  }
  // Entries toward vertices at level >= k sit in v's top bucket.
  for (Vertex w : buckets_[v][bucket_index(own)]) {
    ++work_;
    if (level_[w] >= k) f(w);
  }
}

}  // namespace dynmis

#endif  // DYNMIS_DYNGRAPH_HPP_
