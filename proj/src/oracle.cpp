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

#include "dynmis/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dynmis::oracle {

StaticGraph::StaticGraph(std::uint32_t n, std::span<const Edge> edges) : adj_(n) {
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loop");
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
  }
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end()) {
      throw std::invalid_argument("duplicate edge");
    }
  }
  num_edges_ = edges.size();
}

bool StaticGraph::has_edge(Vertex a, Vertex b) const {
  if (a >= size() || b >= size()) return false;
  return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
}

std::vector<Edge> StaticGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_);
  for (Vertex a = 0; a < size(); ++a) {
    for (Vertex b : adj_[a]) {
      if (a < b) out.push_back({a, b});
    }
  }
  return out;
}

StaticGraph StaticGraph::with_update(UpdateKind kind, Vertex a, Vertex b) const {
  std::vector<Edge> list = edges();
  const Edge target = Edge{a, b}.normalized();
  auto it = std::find(list.begin(), list.end(), target);
  if (kind == UpdateKind::kInsert) {
    if (it != list.end()) throw std::invalid_argument("edge already present");
    list.push_back(target);
  } else {
    if (it == list.end()) throw std::invalid_argument("edge not present");
    list.erase(it);
  }
  return StaticGraph(size(), list);
}

Membership greedy_mis(const StaticGraph& g, const Permutation& perm) {
  const std::uint32_t n = g.size();
  Membership in(n, false);
  Membership dominated(n, false);
  for (Rank p = 1; p <= n; ++p) {
    const Vertex v = perm.vertex_at(p);
    if (dominated[v]) continue;
    in[v] = true;
    dominated[v] = true;
    for (Vertex w : g.neighbors(v)) dominated[w] = true;
  }
  return in;
}

std::vector<Rank> domination_ranks(const StaticGraph& g, const Permutation& perm,
                                   const Membership& mis) {
  const std::uint32_t n = g.size();
  std::vector<Rank> dom(n, 0);
  auto relax = [&](Vertex w, Rank r) {
    if (dom[w] == 0 || r < dom[w]) dom[w] = r;
  };
  for (Vertex z = 0; z < n; ++z) {
    if (!mis[z]) continue;
    relax(z, perm.rank(z));
    for (Vertex w : g.neighbors(z)) relax(w, perm.rank(z));
  }
  return dom;
}

namespace {

bool has_mis_predecessor(const StaticGraph& g, const Permutation& perm,
                         const Membership& mis, Vertex z) {
  for (Vertex w : g.neighbors(z)) {
    if (mis[w] && perm.rank(w) < perm.rank(z)) return true;
  }
  return false;
}

}  // namespace

bool violates_greedy_constraint(const StaticGraph& g, const Permutation& perm,
                                const Membership& mis, Vertex v) {
  const bool pred = has_mis_predecessor(g, perm, mis, v);
  return mis[v] ? pred : !pred;
}

std::vector<Vertex> influenced_set_bruteforce(const StaticGraph& g_after,
                                              const Permutation& perm,
                                              const Membership& mis_old,
                                              Vertex u, Vertex v) {
  if (perm.rank(u) > perm.rank(v)) std::swap(u, v);
  if (!violates_greedy_constraint(g_after, perm, mis_old, v)) return {};

  const std::uint32_t n = g_after.size();
  std::vector<bool> prev(n, false);   // S_{i-1}
  std::vector<bool> seen(n, false);   // union of S_0 .. S_{i-1}
  prev[v] = true;
  seen[v] = true;
  // Each round either grows the union or repeats; two stable rounds in a row
  // mean a fixed point, so 2n + 2 rounds always suffice.
  for (std::uint32_t round = 0; round < 2 * n + 2; ++round) {
    std::vector<bool> next(n, false);
    for (Vertex w = 0; w < n; ++w) {
      const Rank rw = perm.rank(w);
      if (mis_old[w]) {
        for (Vertex x : g_after.neighbors(w)) {
          if (perm.rank(x) < rw && prev[x]) {
            next[w] = true;
            break;
          }
        }
      } else {
        bool all_in = true;
        for (Vertex x : g_after.neighbors(w)) {
          if (perm.rank(x) < rw && mis_old[x] && !seen[x]) {
            all_in = false;
            break;
          }
        }
        next[w] = all_in;
      }
    }
    bool grew = false;
    for (Vertex w = 0; w < n; ++w) {
      if (next[w] && !seen[w]) {
        seen[w] = true;
        grew = true;
      }
    }
    const bool repeated = next == prev;
    prev = std::move(next);
    if (!grew && repeated) break;
  }

  std::vector<Vertex> out;
  for (Vertex w = 0; w < n; ++w) {
    if (seen[w]) out.push_back(w);
  }
  std::sort(out.begin(), out.end(),
            [&](Vertex a, Vertex b) { return perm.rank(a) < perm.rank(b); });
  return out;
}

bool satisfies_influence_closure(const StaticGraph& g_after,
                                 const Permutation& perm,
                                 const Membership& mis_old,
                                 std::span<const Vertex> s) {
  const std::uint32_t n = g_after.size();
  std::vector<bool> in_s(n, false);
  for (Vertex w : s) in_s[w] = true;
  for (Vertex z = 0; z < n; ++z) {
    const Rank rz = perm.rank(z);
    bool holds = false;
    if (mis_old[z]) {
      for (Vertex x : g_after.neighbors(z)) {
        if (perm.rank(x) < rz && in_s[x]) {
          holds = true;
          break;
        }
      }
    } else {
      holds = true;
      for (Vertex x : g_after.neighbors(z)) {
        if (perm.rank(x) < rz && mis_old[x] && !in_s[x]) {
          holds = false;
          break;
        }
      }
    }
    if (holds != in_s[z]) {
      // The seed vertex is in S by fiat; it is the one vertex allowed to
      // fail its own condition.
      if (z != s.front()) return false;
    }
  }
  return true;
}

std::vector<Vertex> residual_vertices(const StaticGraph& g, const Permutation& perm,
                                      Rank k) {
  const std::uint32_t n = g.size();
  const Membership mis = greedy_mis(g, perm);
  std::vector<bool> dominated(n, false);
  for (Vertex z = 0; z < n; ++z) {
    if (!mis[z] || perm.rank(z) > k) continue;
    dominated[z] = true;
    for (Vertex w : g.neighbors(z)) dominated[w] = true;
  }
  std::vector<Vertex> out;
  for (Vertex w = 0; w < n; ++w) {
    if (!dominated[w]) out.push_back(w);
  }
  return out;
}

std::size_t max_degree_induced(const StaticGraph& g, std::span<const Vertex> subset) {
  std::vector<bool> in(g.size(), false);
  for (Vertex w : subset) in[w] = true;
  std::size_t best = 0;
  for (Vertex w : subset) {
    std::size_t d = 0;
    for (Vertex x : g.neighbors(w)) d += in[x] ? 1 : 0;
    best = std::max(best, d);
  }
  return best;
}

bool condition_holds(const Condition& cond, Rank rank_u, Rank rank_v) {
  if (rank_u >= rank_v) return false;
  if (const auto* c = std::get_if<FixedEarlierEndpoint>(&cond)) {
    return rank_u == c->c && rank_v > c->a && rank_v <= c->b;
  }
  if (const auto* w = std::get_if<BothInWindow>(&cond)) {
    return rank_u > w->a && rank_v <= w->b;
  }
  return true;
}

namespace {

constexpr std::uint32_t kMaxEnumeration = 9;

void check_enumerable(const StaticGraph& g, UpdateKind kind, Vertex x, Vertex y) {
  if (g.size() > kMaxEnumeration) {
    throw std::invalid_argument("exhaustive enumeration is limited to n <= 9");
  }
  if (x >= g.size() || y >= g.size() || x == y) {
    throw std::invalid_argument("update endpoints must be distinct vertices");
  }
  if ((kind == UpdateKind::kInsert) == g.has_edge(x, y)) {
    throw std::invalid_argument("update is illegal for the given graph");
  }
}

// Calls f(perm) for all n! orders of [0, n).
template <typename F>
void for_each_permutation(std::uint32_t n, F&& f) {
  std::vector<Rank> ranks(n);
  std::iota(ranks.begin(), ranks.end(), Rank{1});
  do {
    f(Permutation::from_ranks(ranks));
  } while (std::next_permutation(ranks.begin(), ranks.end()));
}

}  // namespace

Rational exhaustive_expected_s(const StaticGraph& g, UpdateKind kind, Vertex u,
                               Vertex v, const Condition& cond) {
  check_enumerable(g, kind, u, v);
  const StaticGraph after = g.with_update(kind, u, v);
  const bool normalize = std::holds_alternative<Unconditioned>(cond);
  std::int64_t total = 0;
  std::int64_t count = 0;
  for_each_permutation(g.size(), [&](const Permutation& perm) {
    Vertex a = u;
    Vertex b = v;
    if (normalize && perm.rank(a) > perm.rank(b)) std::swap(a, b);
    if (!condition_holds(cond, perm.rank(a), perm.rank(b))) return;
    const Membership mis = greedy_mis(g, perm);
    total += static_cast<std::int64_t>(
        influenced_set_bruteforce(after, perm, mis, a, b).size());
    ++count;
  });
  if (count == 0) throw std::invalid_argument("condition is unsatisfiable");
  return Rational(total, count);
}

InfluenceTable influence_table(const StaticGraph& g, UpdateKind kind, Vertex x,
                               Vertex y) {
  check_enumerable(g, kind, x, y);
  const StaticGraph after = g.with_update(kind, x, y);
  const std::uint32_t n = g.size();
  InfluenceTable t;
  t.n = n;
  t.forward_sum.assign(n * n, 0);
  t.forward_count.assign(n * n, 0);
  t.backward_sum.assign(n * n, 0);
  t.backward_count.assign(n * n, 0);
  for_each_permutation(n, [&](const Permutation& perm) {
    const bool forward = perm.rank(x) < perm.rank(y);
    const Vertex u = forward ? x : y;
    const Vertex v = forward ? y : x;
    const Membership mis = greedy_mis(g, perm);
    const auto s = influenced_set_bruteforce(after, perm, mis, u, v);
    const std::size_t c = t.cell(perm.rank(u), perm.rank(v));
    (forward ? t.forward_sum : t.backward_sum)[c] += static_cast<std::int64_t>(s.size());
    (forward ? t.forward_count : t.backward_count)[c] += 1;
  });
  return t;
}

Rational expected_s_from_table(const InfluenceTable& table, bool forward,
                               const Condition& cond) {
  // Without a condition both orientations contribute; the earlier endpoint
  // is u in each permutation.
  const bool both = std::holds_alternative<Unconditioned>(cond);
  std::int64_t total = 0;
  std::int64_t perms = 0;
  for (Rank p = 1; p <= table.n; ++p) {
    for (Rank q = p + 1; q <= table.n; ++q) {
      if (!condition_holds(cond, p, q)) continue;
      const std::size_t c = table.cell(p, q);
      if (forward || both) {
        total += table.forward_sum[c];
        perms += table.forward_count[c];
      }
      if (!forward || both) {
        total += table.backward_sum[c];
        perms += table.backward_count[c];
      }
    }
  }
  if (perms == 0) throw std::invalid_argument("condition is unsatisfiable");
  return Rational(total, perms);
}

}  // namespace dynmis::oracle
