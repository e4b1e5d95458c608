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

#include "dynmis/mis_core.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>

namespace dynmis {

namespace {

std::string vname(Vertex v) { return std::to_string(v); }

// v lost the edge to its MIS predecessor u; does another one remain?
bool has_other_mis_predecessor(const DynGraph& g, Vertex u, Vertex v) {
  const Rank ru = g.perm().rank(u);
  const Rank rv = g.perm().rank(v);
  for (Rank r : g.mis_neighbor_ranks(v)) {
    if (r >= rv) break;
    if (r != ru) return true;
  }
  // MIS neighbors above v's level are not recorded; they share v's top bucket.
  bool found = false;
  g.for_each_neighbor_at_least(v, g.vertex_level(v), [&](Vertex x) {
    if (!found && x != u && g.in_mis(x) && g.perm().rank(x) < rv) found = true;
  });
  return found;
}

// Calls f(w) for every neighbor without charging work; verification only.
template <typename F>
void for_each_neighbor_uncharged(const DynGraph& g, Vertex v, F&& f) {
  for (Level l = kFullGraphLevel; l <= g.vertex_level(v); ++l) {
    for (Vertex w : g.bucket(v, l)) f(w);
  }
}

bool definitionally_in_level(const DynGraph& g, Vertex w, Level k) {
  const auto limit = static_cast<Rank>(std::uint64_t{1} << k);
  if (g.in_mis(w) && g.perm().rank(w) <= limit) return false;
  bool dominated = false;
  for_each_neighbor_uncharged(g, w, [&](Vertex x) {
    if (g.in_mis(x) && g.perm().rank(x) <= limit) dominated = true;
  });
  return !dominated;
}

void check_joiner_level(const DynGraph& g, Vertex z) {
  const Level k = g.perm().level_of_vertex(z);
  if (g.vertex_level(z) != std::min(k, g.levels() - 1)) {
    throw StructuralError("joiner " + vname(z) + " is not at its own level");
  }
  for_each_neighbor_uncharged(g, z, [&](Vertex w) {
    if (g.in_level(w, k) != definitionally_in_level(g, w, k)) {
      throw StructuralError("neighbor " + vname(w) + " of joiner " + vname(z) +
                            " has a stale membership in V_" + std::to_string(k));
    }
  });
}

}  // namespace

std::string_view easy_case_name(EasyCase c) {
  switch (c) {
    case EasyCase::kNone:
      return "none";
    case EasyCase::kI:
      return "i";
    case EasyCase::kII:
      return "ii";
    case EasyCase::kIII:
      return "iii";
  }
  return "none";
}

EasyCase classify_update(const DynGraph& g, Vertex u, Vertex v, UpdateKind kind) {
  if (!g.in_mis(u)) return EasyCase::kI;
  if (kind == UpdateKind::kDelete) {
    if (g.in_mis(v)) {
      throw StructuralError("edge " + vname(u) + "-" + vname(v) + " joins two MIS vertices");
    }
    return has_other_mis_predecessor(g, u, v) ? EasyCase::kII : EasyCase::kNone;
  }
  return g.in_mis(v) ? EasyCase::kNone : EasyCase::kIII;
}

InfluenceResult find_influenced_set(const DynGraph& g, Vertex u, Vertex v, Level b) {
  (void)u;
  const Permutation& perm = g.perm();
  using Entry = std::pair<Rank, Vertex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  std::unordered_set<Vertex> queued;
  std::unordered_set<Vertex> in_s;
  InfluenceResult out;

  const Rank rv = perm.rank(v);
  auto push = [&](Vertex w) {
    if (!queued.insert(w).second) return;
    if (perm.rank(w) < rv) throw StructuralError("queued vertex precedes v");
    queue.push({perm.rank(w), w});
    out.t0_log.push_back(w);
  };

  push(v);
  Rank last = 0;
  while (!queue.empty()) {
    const auto [rz, z] = queue.top();
    queue.pop();
    if (rz <= last) throw StructuralError("queue extraction is not monotone");
    last = rz;

    if (g.in_mis(z)) {
      const Level kz = perm.level_of_vertex(z);
      if (!g.in_level(z, kz)) {
        throw StructuralError("MIS vertex " + vname(z) + " is missing from V_" +
                              std::to_string(kz));
      }
      in_s.insert(z);
      out.s.push_back(z);
      g.for_each_neighbor_at_least(z, kz, [&](Vertex w) {
        if (perm.rank(w) > rz) push(w);
      });
      continue;
    }

    if (z != v) {
      bool all_in = true;
      g.for_each_neighbor_at_least(z, b, [&](Vertex w) {
        if (all_in && g.in_mis(w) && perm.rank(w) < rz && !in_s.contains(w)) all_in = false;
      });
      if (!all_in) continue;
    }
    in_s.insert(z);
    out.s.push_back(z);
    g.for_each_neighbor_at_least(z, b, [&](Vertex w) {
      if (g.in_mis(w) && perm.rank(w) > rz) push(w);
    });
  }
  return out;
}

ChangeSet rebuild_mis_on_influenced(const DynGraph& g, std::span<const Vertex> s, Vertex v,
                                    UpdateKind kind) {
  const bool deletion = kind == UpdateKind::kDelete;
  const Level b = g.perm().level_of_vertex(v);
  std::unordered_set<Vertex> joined;
  std::vector<Vertex> joined_list;

  for (Vertex z : s) {
    if (!deletion && z == v) continue;
    bool blocked = false;
    if (!joined_list.empty()) {
      // Pairwise probes against the joiners so far, or one pass over z's
      // neighbors inside V_b, whichever is shorter.
      const std::size_t scan = g.level_degree(z, std::min(b, g.vertex_level(z)));
      if (joined_list.size() <= scan) {
        g.charge(joined_list.size());
        for (Vertex x : joined_list) {
          if (g.has_edge(z, x)) {
            blocked = true;
            break;
          }
        }
      } else {
        g.for_each_neighbor_at_least(z, b, [&](Vertex w) {
          if (joined.contains(w)) blocked = true;
        });
        if (!blocked && deletion && z != v && joined.contains(v)) {
          g.charge(1);
          blocked = g.has_edge(z, v);
        }
      }
    }
    if (!blocked) {
      joined.insert(z);
      joined_list.push_back(z);
    }
  }

  ChangeSet cs;
  cs.influenced.assign(s.begin(), s.end());
  for (Vertex z : s) {
    const bool now = joined.contains(z);
    if (now && !g.in_mis(z)) cs.entered.push_back(z);
    if (!now && g.in_mis(z)) cs.left.push_back(z);
  }
  return cs;
}

FixResult fix_subgraphs(DynGraph& g, std::span<const StatusChange> changed, bool check_levels) {
  std::unordered_map<Vertex, Level> first_level;
  auto touch = [&](Vertex w) { first_level.try_emplace(w, g.vertex_level(w)); };
  std::vector<Vertex> nbrs;
  for (const StatusChange& c : changed) {
    const Vertex z = c.vertex;
    if (c.joins) {
      touch(z);
      g.recompute(z);
      if (check_levels) check_joiner_level(g, z);
      nbrs.clear();
      g.for_each_neighbor_at_least(z, g.perm().level_of_vertex(z),
                                   [&](Vertex w) { nbrs.push_back(w); });
      for (Vertex w : nbrs) {
        touch(w);
        g.link_mis_neighbor(w, z);
      }
    } else {
      for (Vertex w : c.snapshot) {
        touch(w);
        g.unlink_mis_neighbor(w, z);
      }
      touch(z);
      g.recompute(z);
    }
  }
  FixResult r;
  r.recomputed = first_level.size();
  for (const auto& [w, level] : first_level) r.moved += g.vertex_level(w) != level ? 1 : 0;
  return r;
}

UpdateResult update(DynGraph& g, Vertex a, Vertex b, UpdateKind kind, bool verify) {
  const auto start = std::chrono::steady_clock::now();
  if (a >= g.size() || b >= g.size()) {
    throw std::invalid_argument("endpoint out of range: " + vname(a) + " " + vname(b));
  }
  if (a == b) throw std::invalid_argument("self-loop at vertex " + vname(a));
  if ((kind == UpdateKind::kInsert) == g.has_edge(a, b)) {
    throw std::invalid_argument(kind == UpdateKind::kInsert ? "edge already present"
                                                            : "edge not present");
  }

  const Permutation& perm = g.perm();
  Vertex u = a;
  Vertex v = b;
  if (perm.rank(u) > perm.rank(v)) std::swap(u, v);

  UpdateResult r;
  UpdateMetrics& m = r.metrics;
  m.level_a = perm.level_of_vertex(u);
  m.level_b = perm.level_of_vertex(v);
  const std::uint64_t work_before = g.work();
  const bool insertion = kind == UpdateKind::kInsert;
  auto apply_raw = [&] { insertion ? g.insert_edge_raw(u, v) : g.delete_edge_raw(u, v); };

  const EasyCase easy = classify_update(g, u, v, kind);
  r.changes.easy_case = easy;
  if (easy != EasyCase::kNone) {
    apply_raw();
    if (insertion) {
      if (g.in_mis(v)) g.link_mis_neighbor(u, v);
      if (g.in_mis(u)) g.link_mis_neighbor(v, u);
    } else {
      g.unlink_mis_neighbor(u, v);
      g.unlink_mis_neighbor(v, u);
    }
  } else {
    apply_raw();
    InfluenceResult inf = find_influenced_set(g, u, v, m.level_b);
    ChangeSet cs = rebuild_mis_on_influenced(g, inf.s, v, kind);

    if (verify) {
      const std::unordered_set<Vertex> in_s(inf.s.begin(), inf.s.end());
      for (Vertex z : cs.entered) {
        for_each_neighbor_uncharged(g, z, [&](Vertex w) {
          if (g.in_mis(w) && !in_s.contains(w)) {
            throw StructuralError("joiner " + vname(z) + " conflicts with MIS vertex " +
                                  vname(w) + " outside S");
          }
        });
      }
    }

    std::vector<StatusChange> changed;
    changed.reserve(cs.size());
    for (Vertex z : cs.entered) changed.push_back({z, true, {}});
    for (Vertex y : cs.left) {
      StatusChange c{y, false, {}};
      g.for_each_neighbor_at_least(y, perm.level_of_vertex(y),
                                   [&](Vertex w) { c.snapshot.push_back(w); });
      changed.push_back(std::move(c));
    }
    std::sort(changed.begin(), changed.end(), [&](const StatusChange& x, const StatusChange& y) {
      return perm.rank(x.vertex) < perm.rank(y.vertex);
    });
    for (const StatusChange& c : changed) g.set_mis_flag(c.vertex, c.joins);

    // v's own domination rank: capped by u on insertion, freed on deletion.
    if (insertion) {
      g.link_mis_neighbor(v, u);
    } else {
      g.unlink_mis_neighbor(v, u);
    }

    const FixResult fix = fix_subgraphs(g, changed, verify);
    m.s_size = inf.s.size();
    m.t0_size = inf.t0_log.size();
    m.t1_size = fix.recomputed;
    m.t1_moved = fix.moved;
    r.changes.entered = std::move(cs.entered);
    r.changes.left = std::move(cs.left);
    r.changes.influenced = std::move(cs.influenced);
  }

  m.touched_adj = g.work() - work_before;
  m.changes = r.changes.size();
  m.easy_case = easy;

  if (verify) {
    const auto bad = g.validate_full();
    if (!bad.empty()) {
      std::string msg = "state invalid after update " + vname(a) + "-" + vname(b) + ": " +
                        bad.front();
      if (bad.size() > 1) msg += " (+" + std::to_string(bad.size() - 1) + " more)";
      throw StructuralError(msg);
    }
  }
  m.elapsed_ns = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() -
                                                           start)
          .count());
  return r;
}

}  // namespace dynmis
