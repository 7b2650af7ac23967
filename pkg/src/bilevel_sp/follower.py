"""Exact follower solvers for a fixed leader choice X.

* weak completion: a lexicographic shortest path where X is free and the rest
  of the leader's edges are forbidden;
* strong completion on a DAG: X must be a chain, and the gaps between
  consecutive chain edges are independent shortest-path problems;
* strong completion in general: pruned depth-first search (the problem is
  NP-hard, so nothing better is expected).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable

from .core import (
    LEX_ZERO,
    ZERO,
    BilevelInstance,
    Edge,
    FollowerOutcome,
    FollowerResponse,
    LexValue,
    Owner,
    Path,
    Status,
    chain_order,
    follower_weight,
    leader_choice,
    lex_shortest_path,
    reachable_from,
    topological_order,
)


def _follower_only_weight(edge: Edge) -> LexValue:
    return LexValue(edge.d, edge.c)


def _outcome(instance: BilevelInstance, path: Path, value: LexValue) -> FollowerOutcome:
    ys = frozenset(i for i in path.edges if not instance.edges[i].is_leader)
    return FollowerOutcome(Status.OPTIMAL, value, FollowerResponse(ys, path))


def solve_follower_weak(instance: BilevelInstance, X: Iterable[int]) -> FollowerOutcome:
    X = leader_choice(instance, X)
    allowed = X | frozenset(instance.follower_edges)
    found = lex_shortest_path(instance, allowed, follower_weight, instance.s, instance.t)
    if found is None:
        return FollowerOutcome.infeasible("no s-t path in X plus follower edges")
    value, path = found
    return _outcome(instance, path, value)


# -- strong completion, general graphs ------------------------------------------


def _integer_weights(instance: BilevelInstance):
    """Per-edge follower weights as integer pairs ``(d, c)`` after a common scaling; leader edges weigh 0."""
    sd = lcm(*(e.d.denominator for e in instance.edges)) if instance.edges else 1
    sc = lcm(*(e.c.denominator for e in instance.edges)) if instance.edges else 1
    wd = [0 if e.is_leader else int(e.d * sd) for e in instance.edges]
    wc = [0 if e.is_leader else int(e.c * sc) for e in instance.edges]
    return wd, wc, sd, sc


def solve_follower_strong_exact(instance: BilevelInstance, X: Iterable[int]) -> FollowerOutcome:
    """Minimize (d(Y), c(Y)) over Y with X + Y exactly a simple s-t path.

    Depth-first search from s in ascending neighbor order, so among equally
    good responses the first one found has the smallest vertex sequence.
    A branch is cut when its partial value plus the unconstrained distance to
    t already reaches the incumbent, when an unused X-edge touches a vertex
    already passed, or when t or some unused X-edge can no longer be reached
    from the head without revisiting the path. Arithmetic runs on integers
    scaled by the common denominators.
    """
    X = leader_choice(instance, X)
    if not _could_be_on_one_path(instance, X):
        return FollowerOutcome.infeasible("X cannot lie on a single simple path")
    allowed = X | frozenset(instance.follower_edges)
    wd, wc, sd, sc = _integer_weights(instance)
    n = instance.n
    adj = [[(y, i) for y, i in row if i in allowed] for row in instance.adjacency]
    to_t = _distances_to_t(instance, adj, wd, wc)
    s, t = instance.s, instance.t
    if to_t[s] is None:
        return FollowerOutcome.infeasible("no s-t path contains all of X")
    edges = instance.edges
    directed = instance.directed

    best = [None, None]  # (d, c), path
    on_path = [False] * n
    on_path[s] = True
    vertices = [s]
    ids: list = []
    remaining = set(X)

    def viable(head: int) -> bool:
        for i in remaining:
            e = edges[i]
            if directed:
                if on_path[e.v] or (on_path[e.u] and e.u != head):
                    return False
            elif (on_path[e.u] and e.u != head) or (on_path[e.v] and e.v != head):
                return False
        reach = [False] * n
        reach[head] = True
        stack = [head]
        while stack:
            x = stack.pop()
            for y, _ in adj[x]:
                if not reach[y] and not on_path[y]:
                    reach[y] = True
                    stack.append(y)
        if not reach[t]:
            return False
        for i in remaining:
            e = edges[i]
            if not reach[e.u] and (directed or not reach[e.v]):
                return False
        return True

    def dfs(head: int, vd: int, vc: int):
        for y, i in adj[head]:
            if on_path[y]:
                continue
            bound = to_t[y]
            if bound is None:
                continue
            nd, nc = vd + wd[i], vc + wc[i]
            inc = best[0]
            if inc is not None and (nd + bound[0], nc + bound[1]) >= inc:
                continue
            is_x = i in remaining
            if is_x:
                remaining.discard(i)
            if y == t:
                if not remaining:
                    best[0] = (nd, nc)
                    best[1] = Path(tuple(vertices) + (t,), tuple(ids) + (i,))
            else:
                on_path[y] = True
                vertices.append(y)
                ids.append(i)
                if viable(y):
                    dfs(y, nd, nc)
                ids.pop()
                vertices.pop()
                on_path[y] = False
            if is_x:
                remaining.add(i)

    if viable(s):
        dfs(s, 0, 0)
    if best[1] is None:
        return FollowerOutcome.infeasible("no s-t path contains all of X")
    (vd, vc), path = best
    return _outcome(instance, path, LexValue(Fraction(vd, sd), Fraction(vc, sc)))


def _distances_to_t(instance: BilevelInstance, adj, wd, wc) -> list:
    """Lexicographic (d, c) distance from every vertex to t over ``adj`` (None when t is unreachable).

    Walks are allowed, so this is a lower bound for the DFS.
    """
    if instance.directed:
        incoming = [[] for _ in range(instance.n)]
        for x, row in enumerate(adj):
            for y, i in row:
                incoming[y].append((x, i))
    else:
        incoming = adj
    dist: list = [None] * instance.n
    dist[instance.t] = (0, 0)
    heap = [((0, 0), instance.t)]
    while heap:
        value, x = heapq.heappop(heap)
        if value > dist[x]:
            continue
        for y, i in incoming[x]:
            cand = (value[0] + wd[i], value[1] + wc[i])
            if dist[y] is None or cand < dist[y]:
                dist[y] = cand
                heapq.heappush(heap, (cand, y))
    return dist


def _could_be_on_one_path(instance: BilevelInstance, X: frozenset) -> bool:
    """Cheap necessary condition: X is a linear forest respecting s and t."""
    deg_in: dict = {}
    deg_out: dict = {}
    parent = list(range(instance.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in X:
        e = instance.edges[i]
        if instance.directed:
            deg_out[e.u] = deg_out.get(e.u, 0) + 1
            deg_in[e.v] = deg_in.get(e.v, 0) + 1
            if deg_out[e.u] > 1 or deg_in[e.v] > 1:
                return False
        else:
            for x in (e.u, e.v):
                deg_out[x] = deg_out.get(x, 0) + 1
                if deg_out[x] > 2:
                    return False
        ru, rv = find(e.u), find(e.v)
        if ru == rv:
            return False
        parent[ru] = rv
    s, t = instance.s, instance.t
    if instance.directed:
        return deg_in.get(s, 0) == 0 and deg_out.get(t, 0) == 0
    return deg_out.get(s, 0) <= 1 and deg_out.get(t, 0) <= 1


# -- strong completion on DAGs ----------------------------------------------


@dataclass(frozen=True)
class NormalizedDag:
    """A DAG in which s has one outgoing leader edge ``e_s`` and t one incoming leader edge ``e_t``.

    ``wrapped`` tells whether an artificial source and sink were added; their
    vertices and edges sit after every original id, so original ids survive.
    """

    instance: BilevelInstance
    e_s: int
    e_t: int
    wrapped: bool
    original: BilevelInstance

    def to_original_path(self, path: Path) -> Path:
        if not self.wrapped:
            return path
        return Path(path.vertices[1:-1], path.edges[1:-1])

    def to_original_choice(self, X) -> frozenset:
        if not self.wrapped:
            return frozenset(X)
        return frozenset(X) - {self.e_s, self.e_t}


def _is_terminal_leader_edge(instance: BilevelInstance, adjacency_row) -> bool:
    if len(adjacency_row) != 1:
        return False
    e = instance.edges[adjacency_row[0][1]]
    return e.is_leader and e.c == 0 and e.d == 0


def normalize_dag(instance: BilevelInstance) -> NormalizedDag:
    """Check the single-terminal-edge form and add an artificial source/sink if it is missing."""
    if not instance.directed:
        raise ValueError("DAG routines need a directed instance")
    topological_order(instance)
    s, t = instance.s, instance.t
    if (
        not instance.in_adjacency[s]
        and not instance.adjacency[t]
        and _is_terminal_leader_edge(instance, instance.adjacency[s])
        and _is_terminal_leader_edge(instance, instance.in_adjacency[t])
        and instance.adjacency[s][0][1] != instance.in_adjacency[t][0][1]
    ):
        return NormalizedDag(instance, instance.adjacency[s][0][1], instance.in_adjacency[t][0][1], False, instance)
    n = instance.n
    new_s, new_t = n, n + 1
    m = len(instance.edges)
    extra = (
        Edge(m, new_s, s, Owner.LEADER, ZERO, ZERO),
        Edge(m + 1, t, new_t, Owner.LEADER, ZERO, ZERO),
    )
    wrapped = BilevelInstance(True, n + 2, instance.edges + extra, new_s, new_t)
    return NormalizedDag(wrapped, m, m + 1, True, instance)


def segment(instance: BilevelInstance, e: int, f: int):
    """Best follower-only connection from the head of ``e`` to the tail of ``f``: ``(LexValue, Path)`` or None."""
    follower = frozenset(instance.follower_edges)
    return lex_shortest_path(instance, follower, _follower_only_weight, instance.edges[e].v, instance.edges[f].u)


def solve_follower_strong_dag(instance: BilevelInstance, X: Iterable[int]) -> FollowerOutcome:
    """Polynomial strong-completion follower on a DAG.

    The reported ``reason`` distinguishes an X that is not a chain from a
    chain with an unbridgeable gap.
    """
    X = leader_choice(instance, X)
    norm = normalize_dag(instance)
    inst = norm.instance
    if norm.wrapped:
        chain_input = X | {norm.e_s, norm.e_t}
    else:
        if norm.e_s not in X or norm.e_t not in X:
            return FollowerOutcome.infeasible("X omits a terminal leader edge")
        chain_input = X
    chain = chain_order(inst, chain_input)
    if chain is None:
        return FollowerOutcome.infeasible("not a chain")
    if chain[0] != norm.e_s or chain[-1] != norm.e_t:
        return FollowerOutcome.infeasible("not a chain")

    value = LEX_ZERO
    vertices = [inst.edges[chain[0]].u]
    ids: list = []
    for e, f in zip(chain, chain[1:]):
        found = segment(inst, e, f)
        if found is None:
            return FollowerOutcome.infeasible("empty segment")
        seg_value, seg_path = found
        value = value + seg_value
        vertices.append(inst.edges[e].v)
        ids.append(e)
        vertices.extend(seg_path.vertices[1:])
        ids.extend(seg_path.edges)
    vertices.append(inst.edges[chain[-1]].v)
    ids.append(chain[-1])
    path = norm.to_original_path(Path(tuple(vertices), tuple(ids)))
    return _outcome(instance, path, value)
