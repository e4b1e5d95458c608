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
#include <sstream>
#include <stdexcept>

namespace dynmis {

namespace {

std::string pair_string(Vertex a, Vertex b) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

void check_endpoints(std::uint32_t n, Vertex a, Vertex b) {
  if (a >= n || b >= n) {
    throw std::invalid_argument("edge endpoint out of range: " + pair_string(a, b));
  }
  if (a == b) throw std::invalid_argument("self-loop at vertex " + std::to_string(a));
}

}  // namespace

DynGraph::DynGraph(Permutation perm)
    : perm_(std::move(perm)),
      levels_(perm_.levels()),
      in_mis_(perm_.size(), 0),
      dom_(perm_.size(), kUndominated),
      level_(perm_.size(), 0),
      mis_nbrs_(perm_.size()),
      buckets_(perm_.size(),
               std::vector<std::vector<Vertex>>(static_cast<std::size_t>(levels_) + 1)) {}

DynGraph DynGraph::build(Permutation perm, std::span<const Edge> initial_edges) {
  DynGraph g(std::move(perm));
  const std::uint32_t n = g.size();

  std::vector<std::vector<Vertex>> adj(n);
  g.edges_.reserve(initial_edges.size());
  for (const Edge& e : initial_edges) {
    check_endpoints(n, e.u, e.v);
    if (!g.edges_.emplace(edge_key(e.u, e.v), EdgeSlot{0, 0, 0}).second) {
      throw std::invalid_argument("duplicate edge " + pair_string(e.u, e.v));
    }
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }

  std::vector<bool> dominated(n, false);
  for (Rank p = 1; p <= n; ++p) {
    const Vertex v = g.perm_.vertex_at(p);
    if (dominated[v]) continue;
    g.in_mis_[v] = 1;
    g.dom_[v] = p;
    dominated[v] = true;
    for (Vertex w : adj[v]) {
      if (!dominated[w]) {
        dominated[w] = true;
        g.dom_[w] = p;
      }
    }
  }
  for (Vertex v = 0; v < n; ++v) g.level_[v] = g.level_of_dom(g.dom_[v]);
  for (Vertex z = 0; z < n; ++z) {
    if (!g.in_mis_[z]) continue;
    const Level kz = g.own_level(z);
    for (Vertex w : adj[z]) {
      if (kz <= g.level_[w]) g.mis_nbrs_[w].insert(g.perm_.rank(z));
    }
  }
  for (const Edge& e : initial_edges) g.place_edge(e.u, e.v, g.pair_level(e.u, e.v));
  return g;
}

Level DynGraph::level_of_dom(Rank d) const {
  if (levels_ == 0) return kFullGraphLevel;
  if (d == kUndominated) return levels_ - 1;
  return std::min<Level>(level_of(d), levels_ - 1);
}

bool DynGraph::has_edge(Vertex a, Vertex b) const {
  return a != b && edges_.contains(edge_key(a, b));
}

std::optional<Level> DynGraph::edge_level(Vertex a, Vertex b) const {
  auto it = edges_.find(edge_key(a, b));
  if (a == b || it == edges_.end()) return std::nullopt;
  return it->second.level;
}

std::size_t DynGraph::degree(Vertex v) const {
  std::size_t d = 0;
  for (const auto& b : buckets_[v]) d += b.size();
  return d;
}

std::size_t DynGraph::level_degree(Vertex v, Level k) const {
  std::size_t d = 0;
  for (Level l = k; l <= level_[v]; ++l) d += buckets_[v][bucket_index(l)].size();
  return d;
}

std::size_t DynGraph::max_level_degree(Level k) const {
  std::size_t best = 0;
  for (Vertex v = 0; v < size(); ++v) {
    if (level_[v] >= k) best = std::max(best, level_degree(v, k));
  }
  return best;
}

std::vector<Vertex> DynGraph::neighbors_in_level(Vertex v, Level k) const {
  if (k < 0 || k >= levels_) {
    throw StructuralError("level " + std::to_string(k) + " outside [0, L-1]");
  }
  if (level_[v] < k) {
    throw StructuralError("vertex " + std::to_string(v) + " is not in V_" +
                          std::to_string(k));
  }
  std::vector<Vertex> out;
  for_each_neighbor_at_least(v, k, [&](Vertex w) { out.push_back(w); });
  return out;
}

std::vector<Edge> DynGraph::edge_list() const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const auto& [key, slot] : edges_) {
    out.push_back({static_cast<Vertex>(key >> 32), static_cast<Vertex>(key & 0xffffffffu)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

oracle::StaticGraph DynGraph::to_static() const {
  const auto list = edge_list();
  return oracle::StaticGraph(size(), list);
}

void DynGraph::place_edge(Vertex a, Vertex b, Level level) {
  auto& ba = buckets_[a][bucket_index(level)];
  auto& bb = buckets_[b][bucket_index(level)];
  const auto pa = static_cast<std::uint32_t>(ba.size());
  const auto pb = static_cast<std::uint32_t>(bb.size());
  ba.push_back(b);
  bb.push_back(a);
  edges_[edge_key(a, b)] = a < b ? EdgeSlot{level, pa, pb} : EdgeSlot{level, pb, pa};
}

void DynGraph::remove_from_bucket(Vertex owner, Level level, std::uint32_t pos) {
  auto& bk = buckets_[owner][bucket_index(level)];
  const Vertex last = bk.back();
  bk[pos] = last;
  bk.pop_back();
  if (pos < bk.size()) {
    EdgeSlot& moved = edges_.find(edge_key(owner, last))->second;
    (owner < last ? moved.pos_lo : moved.pos_hi) = pos;
  }
}

void DynGraph::unplace_edge(Vertex a, Vertex b, const EdgeSlot& slot) {
  const Vertex lo = std::min(a, b);
  const Vertex hi = std::max(a, b);
  remove_from_bucket(lo, slot.level, slot.pos_lo);
  remove_from_bucket(hi, slot.level, slot.pos_hi);
}

void DynGraph::move_edge(Vertex a, Vertex b, Level to) {
  const EdgeSlot slot = edges_.find(edge_key(a, b))->second;
  if (slot.level == to) return;
  unplace_edge(a, b, slot);
  place_edge(a, b, to);
}

Level DynGraph::insert_edge_raw(Vertex a, Vertex b) {
  check_endpoints(size(), a, b);
  if (has_edge(a, b)) throw std::invalid_argument("edge already present: " + pair_string(a, b));
  const Level level = pair_level(a, b);
  place_edge(a, b, level);
  ++work_;
  return level;
}

Level DynGraph::delete_edge_raw(Vertex a, Vertex b) {
  check_endpoints(size(), a, b);
  auto it = edges_.find(edge_key(a, b));
  if (it == edges_.end()) throw std::invalid_argument("edge not present: " + pair_string(a, b));
  const EdgeSlot slot = it->second;
  unplace_edge(a, b, slot);
  edges_.erase(edge_key(a, b));
  ++work_;
  return slot.level;
}

void DynGraph::prune_above(Vertex w, Level level) {
  auto& s = mis_nbrs_[w];
  if (level >= levels_ - 1) return;
  // Ranks above 2^(level+1) belong to MIS vertices at higher levels.
  const auto limit = static_cast<Rank>(std::uint64_t{1} << (level + 1));
  s.erase(s.upper_bound(limit), s.end());
}

void DynGraph::relocate(Vertex w, Level from, Level to) {
  if (to < from) {
    for (Level l = to + 1; l <= from; ++l) {
      const std::vector<Vertex> entries = buckets_[w][bucket_index(l)];
      for (Vertex x : entries) {
        ++work_;
        move_edge(w, x, to);
      }
    }
  } else if (to > from) {
    const std::vector<Vertex> entries = buckets_[w][bucket_index(from)];
    for (Vertex x : entries) {
      ++work_;
      const Level target = std::min(to, level_[x]);
      if (target != from) move_edge(w, x, target);
    }
  }
}

DomChange DynGraph::recompute(Vertex w) {
  const Rank old_dom = dom_[w];
  const Level old_level = level_[w];
  auto& s = mis_nbrs_[w];
  auto candidate = [&] {
    Rank c = in_mis_[w] ? perm_.rank(w) : kUndominated;
    if (!s.empty()) c = std::min(c, *s.begin());
    return c;
  };
  Rank new_dom = candidate();
  Level new_level = level_of_dom(new_dom);
  if (new_level > old_level) {
    // MIS neighbors at levels in (old, new] become relevant; they all share
    // w's current top bucket.
    for (Vertex x : buckets_[w][bucket_index(old_level)]) {
      ++work_;
      if (in_mis_[x] && own_level(x) > old_level) s.insert(perm_.rank(x));
    }
    new_dom = candidate();
    new_level = level_of_dom(new_dom);
  }
  if (new_level != old_level) prune_above(w, new_level);
  dom_[w] = new_dom;
  level_[w] = new_level;
  if (new_level != old_level) relocate(w, old_level, new_level);
  return {w, old_dom, new_dom};
}

bool DynGraph::link_mis_neighbor(Vertex w, Vertex z) {
  ++work_;
  if (own_level(z) > level_[w]) return false;
  mis_nbrs_[w].insert(perm_.rank(z));
  recompute(w);
  return true;
}

void DynGraph::unlink_mis_neighbor(Vertex w, Vertex z) {
  ++work_;
  if (mis_nbrs_[w].erase(perm_.rank(z)) != 0) recompute(w);
}

std::vector<DomChange> DynGraph::set_mis_status(Vertex v, bool status) {
  if (in_mis(v) == status) return {};
  std::vector<DomChange> changes;
  auto note = [&](Vertex w, Rank before) {
    if (dom_[w] != before) changes.push_back({w, before, dom_[w]});
  };
  const Level kv = own_level(v);
  if (status) {
    for (const auto& bk : buckets_[v]) {
      for (Vertex x : bk) {
        ++work_;
        if (in_mis_[x]) {
          throw StructuralError("joining " + std::to_string(v) +
                                " would make it adjacent to MIS vertex " +
                                std::to_string(x));
        }
      }
    }
    set_mis_flag(v, true);
    recompute(v);
    std::vector<Vertex> nbrs;
    for_each_neighbor_at_least(v, kv, [&](Vertex w) { nbrs.push_back(w); });
    for (Vertex w : nbrs) {
      const Rank before = dom_[w];
      link_mis_neighbor(w, v);
      note(w, before);
    }
  } else {
    // Exactly the neighbors at level >= kv have v's rank recorded.
    std::vector<Vertex> nbrs;
    for_each_neighbor_at_least(v, kv, [&](Vertex w) { nbrs.push_back(w); });
    set_mis_flag(v, false);
    for (Vertex w : nbrs) {
      const Rank before = dom_[w];
      unlink_mis_neighbor(w, v);
      note(w, before);
    }
    recompute(v);
  }
  return changes;
}

std::string DynGraph::dump() const {
  std::ostringstream out;
  out << "n " << size() << " seed " << perm_.seed() << " m " << edges_.size() << '\n';
  for (const Edge& e : edge_list()) out << e.u << ' ' << e.v << '\n';
  for (Vertex v = 0; v < size(); ++v) {
    out << v << ' ' << perm_.rank(v) << ' ' << (in_mis(v) ? 1 : 0) << ' ';
    if (dom_[v] == kUndominated) {
      out << "inf";
    } else {
      out << dom_[v];
    }
    out << '\n';
  }
  return out.str();
}

DynGraph DynGraph::from_dump(std::string_view text) {
  std::istringstream in{std::string(text)};
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("malformed dump: " + what);
  };
  std::string tag_n, tag_seed, tag_m;
  std::uint64_t n = 0, seed = 0, m = 0;
  if (!(in >> tag_n >> n >> tag_seed >> seed >> tag_m >> m) || tag_n != "n" ||
      tag_seed != "seed" || tag_m != "m" || n == 0 || n > UINT32_MAX) {
    fail("bad header");
  }
  std::vector<Edge> edges(m);
  for (auto& e : edges) {
    if (!(in >> e.u >> e.v)) fail("truncated edge list");
  }
  std::vector<Rank> ranks(n);
  std::vector<int> mis(n);
  std::vector<std::string> dom(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    Vertex v = 0;
    if (!(in >> v >> ranks[i] >> mis[i] >> dom[i]) || v != i) fail("bad vertex line");
  }
  DynGraph g = build(Permutation::from_ranks(ranks, seed), edges);
  for (Vertex v = 0; v < n; ++v) {
    const std::string want = g.dom_[v] == kUndominated ? "inf" : std::to_string(g.dom_[v]);
    if ((mis[v] != 0) != g.in_mis(v) || dom[v] != want) {
      fail("vertex " + std::to_string(v) + " does not match the greedy state");
    }
  }
  return g;
}

std::vector<std::string> DynGraph::validate_full() const {
  std::vector<std::string> bad;
  const std::uint32_t n = size();
  const oracle::StaticGraph g = to_static();
  const oracle::Membership mis = oracle::greedy_mis(g, perm_);
  const std::vector<Rank> dom = oracle::domination_ranks(g, perm_, mis);

  for (Vertex v = 0; v < n; ++v) {
    const std::string vs = "vertex " + std::to_string(v);
    if (in_mis(v) != mis[v]) bad.push_back(vs + ": in_mis disagrees with the static greedy MIS");
    bool has_mis_nbr = false;
    for (Vertex w : g.neighbors(v)) {
      if (in_mis(w)) has_mis_nbr = true;
      if (in_mis(v) && in_mis(w) && v < w) {
        bad.push_back("independence: edge " + pair_string(v, w) + " joins two MIS vertices");
      }
    }
    if (!in_mis(v) && !has_mis_nbr) bad.push_back(vs + ": maximality violated");
    if (dom_[v] != dom[v]) {
      bad.push_back(vs + ": dom_rank " + std::to_string(dom_[v]) + ", expected " +
                    std::to_string(dom[v]));
    }
    if (dom_[v] == kUndominated || dom_[v] > perm_.rank(v)) {
      bad.push_back(vs + ": dom_rank exceeds its own rank");
    }
    if (level_[v] != level_of_dom(dom_[v])) bad.push_back(vs + ": cached level is stale");

    std::set<Rank> expected;
    for (Vertex w : g.neighbors(v)) {
      if (in_mis(w) && own_level(w) <= level_[v]) expected.insert(perm_.rank(w));
    }
    if (expected != mis_nbrs_[v]) bad.push_back(vs + ": relevant MIS-neighbor set is wrong");
  }

  // Greedy constraint against the stored membership.
  oracle::Membership stored(n);
  for (Vertex v = 0; v < n; ++v) stored[v] = in_mis(v);
  for (Vertex v = 0; v < n; ++v) {
    if (oracle::violates_greedy_constraint(g, perm_, stored, v)) {
      bad.push_back("vertex " + std::to_string(v) + ": greedy constraint violated");
    }
  }

  // V_i from the definition: not in M_{2^i} and not adjacent to it.
  std::vector<bool> prev_level(n, true);
  for (Level i = 0; i < levels_; ++i) {
    const auto threshold = static_cast<Rank>(std::uint64_t{1} << i);
    std::vector<bool> removed(n, false);
    for (Vertex z = 0; z < n; ++z) {
      if (!mis[z] || perm_.rank(z) > threshold) continue;
      removed[z] = true;
      for (Vertex w : g.neighbors(z)) removed[w] = true;
    }
    for (Vertex v = 0; v < n; ++v) {
      const bool expected = !removed[v];
      if (in_level(v, i) != expected) {
        bad.push_back("vertex " + std::to_string(v) + ": membership in V_" +
                      std::to_string(i) + " is wrong");
      }
      if (expected && !prev_level[v]) {
        bad.push_back("nesting: vertex " + std::to_string(v) + " in V_" +
                      std::to_string(i) + " but not in V_" + std::to_string(i - 1));
      }
    }
    for (Vertex v = 0; v < n; ++v) prev_level[v] = !removed[v];
  }

  // Bucket law and index consistency.
  std::size_t entries = 0;
  for (Vertex v = 0; v < n; ++v) entries += degree(v);
  if (entries != 2 * edges_.size()) bad.push_back("bucket entry count does not match 2m");
  for (const auto& [key, slot] : edges_) {
    const auto lo = static_cast<Vertex>(key >> 32);
    const auto hi = static_cast<Vertex>(key & 0xffffffffu);
    if (slot.level != pair_level(lo, hi)) {
      bad.push_back("bucket law: edge " + pair_string(lo, hi) + " at level " +
                    std::to_string(slot.level) + ", expected " +
                    std::to_string(pair_level(lo, hi)));
    }
    const auto& blo = buckets_[lo][bucket_index(slot.level)];
    const auto& bhi = buckets_[hi][bucket_index(slot.level)];
    if (slot.pos_lo >= blo.size() || blo[slot.pos_lo] != hi || slot.pos_hi >= bhi.size() ||
        bhi[slot.pos_hi] != lo) {
      bad.push_back("edge index out of sync for " + pair_string(lo, hi));
    }
  }
  return bad;
}

}  // namespace dynmis
