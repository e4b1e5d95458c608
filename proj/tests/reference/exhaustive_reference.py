# Copyright 2026 The dynmis Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Standalone reference for the exact values frozen in oracle_test.cpp.

Enumerates every order of a tiny graph, computes the influenced set with a
fixed-point iteration, and prints E[|S|] as a reduced fraction.
"""

from fractions import Fraction
from itertools import permutations


def greedy(n, adj, order):
    mis = set()
    for w in order:
        if not adj[w] & mis:
            mis.add(w)
    return mis


def influenced(n, adj_after, order, mis, u, v):
    pos = {w: i for i, w in enumerate(order)}
    if pos[u] > pos[v]:
        u, v = v, u
    preds = lambda w: {x for x in adj_after[w] if pos[x] < pos[w]}
    if v in mis:
        violates = bool(preds(v) & mis)
    else:
        violates = not (preds(v) & mis)
    if not violates:
        return set()
    union = {v}
    last = {v}
    for _ in range(4 * n + 4):
        nxt = set()
        for w in range(n):
            if w in mis:
                if preds(w) & last:
                    nxt.add(w)
            elif (preds(w) & mis) <= union:
                nxt.add(w)
        union |= nxt
        last = nxt
    return union


def expected(n, edges, kind, u, v, cond):
    adj = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    after = [set(s) for s in adj]
    if kind == "insert":
        after[u].add(v)
        after[v].add(u)
    else:
        after[u].discard(v)
        after[v].discard(u)
    total = 0
    count = 0
    for order in permutations(range(n)):
        rank = {w: i + 1 for i, w in enumerate(order)}
        a, b = u, v
        if cond[0] == "none" and rank[a] > rank[b]:
            a, b = b, a
        ra, rb = rank[a], rank[b]
        if ra >= rb:
            continue
        if cond[0] == "fixed" and not (ra == cond[1] and cond[2] < rb <= cond[3]):
            continue
        if cond[0] == "window" and not (cond[1] < ra and rb <= cond[2]):
            continue
        mis = greedy(n, adj, order)
        total += len(influenced(n, after, order, mis, a, b))
        count += 1
    return Fraction(total, count)


def complete(n):
    return [(a, b) for a in range(n) for b in range(a + 1, n)]


G7 = [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (2, 6), (1, 5)]

CASES = [
    ("k6_delete_window_1_6", 6, complete(6), "delete", 0, 1, ("window", 1, 6)),
    ("p4_delete_unconditioned", 4, [(0, 1), (1, 2), (2, 3)], "delete", 0, 1, ("none",)),
    ("edgeless4_insert_unconditioned", 4, [], "insert", 0, 1, ("none",)),
    ("star5_insert_leaves_fixed_1_2_5", 5, [(0, 1), (0, 2), (0, 3), (0, 4)], "insert", 1, 2,
     ("fixed", 1, 2, 5)),
    ("c5_delete_window_0_5", 5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], "delete", 0, 1,
     ("window", 0, 5)),
    ("p4_insert_ends_fixed_2_2_4", 4, [(0, 1), (1, 2), (2, 3)], "insert", 0, 3, ("fixed", 2, 2, 4)),
    ("k6_delete_fixed_1_1_6", 6, complete(6), "delete", 0, 1, ("fixed", 1, 1, 6)),
    ("g7_delete_window_1_7", 7, G7, "delete", 3, 4, ("window", 1, 7)),
    ("g7_insert_fixed_2_3_7", 7, G7, "insert", 0, 4, ("fixed", 2, 3, 7)),
    ("g7_insert_unconditioned", 7, G7, "insert", 0, 4, ("none",)),
]

if __name__ == "__main__":
    for name, n, edges, kind, u, v, cond in CASES:
        print(name, expected(n, edges, kind, u, v, cond))
