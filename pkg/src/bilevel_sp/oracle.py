"""Brute-force ground truth and seeded random generators.

Nothing here is clever on purpose: every answer comes from enumerating
paths, subsets or vertex orders, so the solvers can be checked against it.
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterable, NamedTuple, Optional

from .core import (
    BilevelInstance,
    FollowerOutcome,
    FollowerResponse,
    Graph,
    LexValue,
    Owner,
    SolveOutcome,
    Status,
    enumerate_st_paths,
    has_st_path,
    leader_choice,
)
from .kcycle import KCycleInstance

VARIANTS = ("weak", "strong")


def _check_variant(variant: str):
    if variant not in VARIANTS:
        raise ValueError(f"variant must be 'weak' or 'strong', got {variant!r}")


def _covers(path, required) -> bool:
    return not required or set(required) <= set(path.vertices)


def brute_force_follower(instance: BilevelInstance, X: Iterable[int], variant: str, required=()) -> FollowerOutcome:
    """Scan every simple s-t path inside X plus the follower edges.

    Strong: the path must contain X. ``required`` additionally asks for a
    path visiting those vertices. Ties on (d, c) go to the smallest vertex
    sequence.
    """
    _check_variant(variant)
    X = leader_choice(instance, X)
    allowed = X | frozenset(instance.follower_edges)
    best = None
    for path in enumerate_st_paths(instance, allowed):
        if variant == "strong" and not X <= set(path.edges):
            continue
        if not _covers(path, required):
            continue
        Y = [i for i in path.edges if not instance.edges[i].is_leader]
        key = (LexValue(instance.cost(Y, "d"), instance.cost(Y, "c")), path.vertices)
        if best is None or key < best[0]:
            best = (key, path, frozenset(Y))
    if best is None:
        return FollowerOutcome.infeasible("no admissible s-t path")
    (value, _), path, Y = best
    return FollowerOutcome(Status.OPTIMAL, value, FollowerResponse(Y, path))


def brute_force_bilevel(instance: BilevelInstance, variant: str, required=()) -> SolveOutcome:
    """Optimal leader value by trying every X against every path.

    All simple s-t paths are listed once and grouped by the leader edges they
    use. Strong completion: X must equal a group's leader set. Weak
    completion: the follower may take any path whose leader set lies inside X,
    so each X sees the minimum over its subsets (computed as a subset-min
    sweep over bitmasks). X is scanned by size, then lexicographically, and
    only strict improvements replace the incumbent.
    """
    _check_variant(variant)
    leaders = instance.leader_edges
    bit = {e: 1 << i for i, e in enumerate(leaders)}
    size = 1 << len(leaders)
    # per leader-set mask: ((d(Y), c(Y)), vertex sequence, path)
    best: list = [None] * size
    for path in enumerate_st_paths(instance):
        if not _covers(path, required):
            continue
        mask = 0
        Y = []
        for i in path.edges:
            if i in bit:
                mask |= bit[i]
            else:
                Y.append(i)
        key = (LexValue(instance.cost(Y, "d"), instance.cost(Y, "c")), path.vertices)
        if best[mask] is None or key < best[mask][:2]:
            best[mask] = (key[0], key[1], path)
    if variant == "weak":
        for b in bit.values():
            for mask in range(size):
                if mask & b and best[mask ^ b] is not None:
                    if best[mask] is None or best[mask ^ b][:2] < best[mask][:2]:
                        best[mask] = best[mask ^ b]

    incumbent = None
    for r in range(len(leaders) + 1):
        for combo in combinations(leaders, r):
            mask = sum(bit[e] for e in combo)
            entry = best[mask]
            if entry is None:
                continue
            value, _, path = entry
            leader_value = instance.cost(combo) + value.secondary
            if incumbent is None or leader_value < incumbent[0]:
                incumbent = (leader_value, value.primary, frozenset(combo), path)
    if incumbent is None:
        return SolveOutcome.infeasible(reason="no admissible s-t path")
    leader_value, follower_value, X, path = incumbent
    Y = frozenset(i for i in path.edges if not instance.edges[i].is_leader)
    return SolveOutcome(Status.OPTIMAL, leader_value, follower_value, X, FollowerResponse(Y, path))


# -- classic problems -----------------------------------------------------------


def _simple_paths(G: Graph, a: int, b: int, avoid=frozenset()):
    """All simple a-b paths of G as vertex tuples, in lexicographic order."""
    if a in avoid or b in avoid:
        return
    nbrs = G.neighbors
    stack = [(a, (a,))]
    while stack:
        x, seq = stack.pop()
        if x == b:
            yield seq
            continue
        for y in reversed(nbrs[x]):
            if y not in seq and y not in avoid:
                stack.append((y, seq + (y,)))


def max_independent_set(G: Graph) -> int:
    """Size of a largest independent set, by trying subsets from large to small."""
    return len(maximum_independent_set(G))


def maximum_independent_set(G: Graph) -> tuple:
    """A largest independent set: the lexicographically first among those of maximum size."""
    for r in range(G.n, 0, -1):
        for combo in combinations(range(G.n), r):
            if not any(G.has_edge(u, v) for u, v in combinations(combo, 2)):
                return combo
    return ()


def hamiltonian_st_path(G: Graph, s: int, t: int) -> Optional[tuple]:
    """Lexicographically first Hamiltonian s-t path, or None."""
    for seq in _simple_paths(G, s, t):
        if len(seq) == G.n:
            return seq
    return None


def two_disjoint_paths(G: Graph, s1: int, t1: int, s2: int, t2: int) -> Optional[tuple]:
    """Vertex-disjoint s1-t1 and s2-t2 paths ``(P1, P2)``, or None."""
    for p1 in _simple_paths(G, s1, t1, avoid=frozenset({s2, t2})):
        for p2 in _simple_paths(G, s2, t2, avoid=frozenset(p1)):
            return p1, p2
    return None


class MinMaxHamAnswer(NamedTuple):
    yes: bool
    B_prime: Optional[frozenset]


def solve_minmaxham_exact(mmh) -> MinMaxHamAnswer:
    """Group the Hamiltonian s-t paths by which B-edges they use; yes when some group avoids e_tilde entirely.

    The witness is the first good group in (size, sorted ids) order.
    """
    G = mmh.graph
    index = {}
    for i, (a, b) in enumerate(G.edges):
        index[(a, b)] = index[(b, a)] = i
    groups: dict = {}
    for seq in _simple_paths(G, mmh.s, mmh.t):
        if len(seq) != G.n:
            continue
        used = {index[a, b] for a, b in zip(seq, seq[1:])}
        key = frozenset(used & mmh.B)
        groups[key] = groups.get(key, True) and mmh.e_tilde not in used
    good = [key for key, ok in groups.items() if ok]
    if not good:
        return MinMaxHamAnswer(False, None)
    return MinMaxHamAnswer(True, min(good, key=lambda k: (len(k), sorted(k))))


# -- generators -------------------------------------------------------------------


def random_instance(
    n: int,
    p: float = 0.5,
    leader_fraction: float = 0.3,
    max_cost: int = 5,
    directed: bool = False,
    dag: bool = False,
    seed: int = 0,
    max_leader_edges: Optional[int] = None,
    max_edges: Optional[int] = None,
) -> BilevelInstance:
    """Reproducible random instance that always has an s-t path.

    Costs are uniform integers in ``[0, max_cost]``. With ``dag`` the edges
    follow a random vertex permutation and s, t are its first and last
    vertices; otherwise s = 0 and t = n - 1. After 100 disconnected draws a
    follower edge s-t is added to the last one.
    """
    if n < 2:
        raise ValueError("need at least 2 vertices")
    if not 0 <= p <= 1 or not 0 <= leader_fraction <= 1:
        raise ValueError("p and leader_fraction must lie in [0, 1]")
    if max_cost < 0:
        raise ValueError("max_cost must be nonnegative")
    directed = directed or dag
    rng = random.Random(seed)
    instance = None
    for _ in range(100):
        instance = _draw(rng, n, p, leader_fraction, max_cost, directed, dag, max_leader_edges, max_edges)
        if has_st_path(instance):
            return instance
    edges = [(e.u, e.v, e.owner, e.c, e.d) for e in instance.edges]
    s, t = instance.s, instance.t
    if instance.edge_between(s, t) is not None:  # pragma: no cover - an s-t edge means a path exists
        raise ValueError("could not generate a connected instance")
    if max_edges is not None and len(edges) >= max_edges:
        edges = edges[: max_edges - 1]
    edges.append((s, t, Owner.FOLLOWER, rng.randint(0, max_cost), rng.randint(0, max_cost)))
    return BilevelInstance.from_edges(n, edges, s, t, directed=directed)


def _draw(rng, n, p, leader_fraction, max_cost, directed, dag, max_leader_edges, max_edges):
    if dag:
        order = list(range(n))
        rng.shuffle(order)
        pairs = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n)]
        s, t = order[0], order[-1]
    else:
        if directed:
            pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
        else:
            pairs = list(combinations(range(n), 2))
        s, t = 0, n - 1
    edges = []
    leaders = 0
    for u, v in pairs:
        if rng.random() >= p:
            continue
        is_leader = rng.random() < leader_fraction
        if is_leader and max_leader_edges is not None and leaders >= max_leader_edges:
            is_leader = False
        leaders += is_leader
        owner = Owner.LEADER if is_leader else Owner.FOLLOWER
        edges.append((u, v, owner, rng.randint(0, max_cost), rng.randint(0, max_cost)))
    if max_edges is not None and len(edges) > max_edges:
        keep = sorted(rng.sample(range(len(edges)), max_edges))
        edges = [edges[i] for i in keep]
    return BilevelInstance.from_edges(n, edges, s, t, directed=directed)


def random_graph(n: int, p: float = 0.5, directed: bool = False, seed: int = 0) -> Graph:
    rng = random.Random(seed)
    if directed:
        pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    else:
        pairs = list(combinations(range(n), 2))
    return Graph(n, tuple(e for e in pairs if rng.random() < p), directed)


def random_kcycle_instance(n: int, p: float = 0.5, k: int = 3, max_weight: int = 5, seed: int = 0) -> KCycleInstance:
    """Random weighted graph with k required vertices drawn uniformly."""
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in 0..{n}")
    rng = random.Random(seed)
    edges = tuple((u, v, rng.randint(0, max_weight)) for u, v in combinations(range(n), 2) if rng.random() < p)
    required = frozenset(rng.sample(range(n), k))
    return KCycleInstance(n, edges, required)
