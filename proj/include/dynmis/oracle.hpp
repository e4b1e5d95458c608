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

// Brute-force reference computations. Nothing here shares code with the
// dynamic structure; every function recomputes its answer from the edge list
// and the order alone.

#ifndef DYNMIS_ORACLE_HPP_
#define DYNMIS_ORACLE_HPP_

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "dynmis/graph_types.hpp"
#include "dynmis/permutation.hpp"

namespace dynmis::oracle {

/// Immutable simple graph with sorted adjacency lists.
class StaticGraph {
 public:
  /// Throws std::invalid_argument on self-loops, duplicates or endpoints
  /// outside [0, n).
  StaticGraph(std::uint32_t n, std::span<const Edge> edges);

  std::uint32_t size() const { return static_cast<std::uint32_t>(adj_.size()); }
  std::size_t num_edges() const { return num_edges_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  bool has_edge(Vertex a, Vertex b) const;

  /// Edges sorted lexicographically, each with u < v.
  std::vector<Edge> edges() const;

  /// Copy with one edge added or removed. Throws std::invalid_argument if the
  /// insertion already exists or the deletion is missing.
  StaticGraph with_update(UpdateKind kind, Vertex a, Vertex b) const;

 private:
  std::vector<std::vector<Vertex>> adj_;
  std::size_t num_edges_ = 0;
};

using Membership = std::vector<bool>;

/// Single pass in rank order; a vertex joins unless an earlier neighbor did.
Membership greedy_mis(const StaticGraph& g, const Permutation& perm);

/// Smallest rank of an MIS vertex in v's closed neighborhood, for every v.
/// Entries are 0 when nothing dominates v (impossible for a maximal set).
std::vector<Rank> domination_ranks(const StaticGraph& g, const Permutation& perm,
                                   const Membership& mis);

/// True iff v breaks the greedy constraint against `mis`: it is in the set and
/// has an earlier neighbor in the set, or it is outside and has none.
bool violates_greedy_constraint(const StaticGraph& g, const Permutation& perm,
                                const Membership& mis, Vertex v);

/// Influenced set of v for an update between u and v (rank(u) < rank(v)), read
/// on the post-update graph against the pre-update MIS. Empty when v still
/// satisfies the greedy constraint. Ascending by rank.
std::vector<Vertex> influenced_set_bruteforce(const StaticGraph& g_after,
                                              const Permutation& perm,
                                              const Membership& mis_old,
                                              Vertex u, Vertex v);

/// Checks the two closure conditions that characterize a nonempty influenced
/// set: an MIS vertex is in S iff it has an earlier neighbor in S, a non-MIS
/// vertex is in S iff all of its earlier MIS neighbors are in S.
bool satisfies_influence_closure(const StaticGraph& g_after,
                                 const Permutation& perm,
                                 const Membership& mis_old,
                                 std::span<const Vertex> s);

/// V minus (M_k and its neighborhood), where M_k are the MIS vertices of rank
/// at most k. Ascending by vertex id.
std::vector<Vertex> residual_vertices(const StaticGraph& g, const Permutation& perm,
                                      Rank k);

/// Maximum degree of the subgraph induced on `subset`.
std::size_t max_degree_induced(const StaticGraph& g, std::span<const Vertex> subset);

using Rational = boost::rational<std::int64_t>;

/// rank(u) == c and rank(v) in [a + 1, b], with 1 <= c <= a < b <= n.
struct FixedEarlierEndpoint {
  Rank c;
  Rank a;
  Rank b;
};
/// a < rank(u) < rank(v) <= b, with 1 <= a < b <= n.
struct BothInWindow {
  Rank a;
  Rank b;
};
/// No condition; the endpoint with the smaller rank plays the role of u.
struct Unconditioned {};

using Condition = std::variant<Unconditioned, FixedEarlierEndpoint, BothInWindow>;

bool condition_holds(const Condition& cond, Rank rank_u, Rank rank_v);

/// Exact E[|S_v|] over all permutations of g's vertices satisfying `cond`,
/// for the update (kind, u, v) applied to g. Requires n <= 9. Throws
/// std::invalid_argument if no permutation satisfies the condition or if the
/// update is illegal for g.
Rational exhaustive_expected_s(const StaticGraph& g, UpdateKind kind, Vertex u,
                               Vertex v, const Condition& cond);

/// Per-cell totals of |S_v| over every permutation of n <= 9 vertices, for an
/// update between x and y. cell(p, q) aggregates the permutations with
/// rank(u) == p and rank(v) == q where u is whichever endpoint comes first;
/// `forward` holds the orientation (u, v) = (x, y), `backward` (y, x).
struct InfluenceTable {
  std::uint32_t n = 0;
  std::vector<std::int64_t> forward_sum, forward_count;
  std::vector<std::int64_t> backward_sum, backward_count;

  std::size_t cell(Rank p, Rank q) const { return (p - 1) * n + (q - 1); }
};

InfluenceTable influence_table(const StaticGraph& g, UpdateKind kind, Vertex x,
                               Vertex y);

/// Expected |S_v| for one orientation under `cond`, read from the table.
/// Unconditioned ignores `forward` and pools both orientations. Throws
/// std::invalid_argument when no permutation satisfies `cond`.
Rational expected_s_from_table(const InfluenceTable& table, bool forward,
                               const Condition& cond);

}  // namespace dynmis::oracle

#endif  // DYNMIS_ORACLE_HPP_
