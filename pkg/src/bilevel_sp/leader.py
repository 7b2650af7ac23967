"""Exact leader solvers.

All enumerations visit leader choices by increasing size, then in
lexicographic order of edge ids, and keep the first strict improvement; the
returned X is therefore the smallest optimal choice in that order.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Callable, Optional

from .core import (
    ZERO,
    BilevelInstance,
    FollowerOutcome,
    FollowerResponse,
    Path,
    SolveOutcome,
    Status,
    reachability_sets,
    precedes,
    topological_order,
    has_st_path,
)
from .follower import normalize_dag, segment, solve_follower_strong_exact, solve_follower_weak
from .kcycle import CycleResult, KCycleInstance, solve_kcycle_exact


def leader_subsets(instance: BilevelInstance):
    ids = instance.leader_edges
    for r in range(len(ids) + 1):
        for combo in combinations(ids, r):
            yield frozenset(combo)


def _enumerate(instance: BilevelInstance, follower: Callable[[BilevelInstance, frozenset], FollowerOutcome]) -> SolveOutcome:
    best: Optional[SolveOutcome] = None
    for X in leader_subsets(instance):
        out = follower(instance, X)
        if not out.feasible:
            continue
        leader_value = instance.cost(X) + out.value.secondary
        if best is None or leader_value < best.leader_value:
            best = SolveOutcome(Status.OPTIMAL, leader_value, out.value.primary, X, out.response)
            if leader_value == 0:  # costs are nonnegative, nothing can beat it
                break
    return best if best is not None else SolveOutcome.infeasible(reason="no s-t path")


def solve_leader_weak_enum(instance: BilevelInstance) -> SolveOutcome:
    """Weak completion: try every X, let the polynomial follower answer, keep the cheapest."""
    if not has_st_path(instance):
        return SolveOutcome.infeasible(reason="no s-t path")
    return _enumerate(instance, solve_follower_weak)


def solve_leader_strong_exact(instance: BilevelInstance) -> SolveOutcome:
    """Strong completion on any graph: every X against the exact exponential follower."""
    if not has_st_path(instance):
        return SolveOutcome.infeasible(reason="no s-t path")
    return _enumerate(instance, solve_follower_strong_exact)


# -- DAG dynamic program ---------------------------------------------------------


def solve_leader_strong_dag(instance: BilevelInstance) -> SolveOutcome:
    """Polynomial strong-completion leader on a DAG.

    ``S[f]`` is the cheapest leader cost of a chain from ``e_s`` to leader edge
    ``f`` whose gaps are filled by optimal follower segments:

        S[e_s] = 0
        S[f]   = min over e < f of  S[e] + segment leader cost(e, f) + c(f)

    The ``c(f)`` term charges the leader for its own edges and vanishes only
    when those are free.
    """
    norm = normalize_dag(instance)
    inst = norm.instance
    reach = reachability_sets(inst)
    e_s, e_t = norm.e_s, norm.e_t
    if not precedes(inst, reach, e_s, e_t):
        return SolveOutcome.infeasible(reason="no s-t path")
    order = topological_order(inst)
    pos = {x: i for i, x in enumerate(order)}
    useful = [
        e
        for e in inst.leader_edges
        if e in (e_s, e_t) or (precedes(inst, reach, e_s, e) and precedes(inst, reach, e, e_t))
    ]
    useful.sort(key=lambda i: (pos[inst.edges[i].u], pos[inst.edges[i].v], i))
    assert useful[0] == e_s and useful[-1] == e_t

    # S maps leader edge -> (leader cost, follower cost); pred keeps (prev edge, segment path)
    S = {e_s: (ZERO, ZERO)}
    pred: dict = {}
    for j, f in enumerate(useful[1:], start=1):
        best = None
        for e in useful[:j]:
            if e not in S or not precedes(inst, reach, e, f):
                continue
            found = segment(inst, e, f)
            if found is None:
                continue
            value, path = found
            cand = S[e][0] + value.secondary + inst.edges[f].c
            if best is None or cand < best[0]:
                best = (cand, S[e][1] + value.primary, e, path)
        if best is not None:
            S[f] = (best[0], best[1])
            pred[f] = (best[2], best[3])
    if e_t not in S:
        return SolveOutcome.infeasible(reason="no feasible chain")

    chain = [e_t]
    segments = []
    while chain[-1] != e_s:
        prev, path = pred[chain[-1]]
        segments.append(path)
        chain.append(prev)
    chain.reverse()
    segments.reverse()
    vertices = [inst.edges[e_s].u]
    ids: list = []
    for e, seg in zip(chain, segments):
        vertices.append(inst.edges[e].v)
        ids.append(e)
        vertices.extend(seg.vertices[1:])
        ids.extend(seg.edges)
    vertices.append(inst.edges[e_t].v)
    ids.append(e_t)
    path = norm.to_original_path(Path(tuple(vertices), tuple(ids)))
    X = norm.to_original_choice(chain)
    Y = frozenset(i for i in path.edges if not instance.edges[i].is_leader)
    leader_value, follower_value = S[e_t]
    return SolveOutcome(
        Status.OPTIMAL,
        leader_value,
        follower_value,
        X,
        FollowerResponse(Y, path),
        info={"dp": dict(S)},
    )


# -- k-cycle oracle route -------------------------------------------------------


def integer_scales(instance: BilevelInstance) -> tuple:
    """Smallest factors turning every c and every d into an integer."""
    sc = lcm(*(e.c.denominator for e in instance.edges)) if instance.edges else 1
    sd = lcm(*(e.d.denominator for e in instance.edges)) if instance.edges else 1
    return sc, sd


def kcycle_big_m(instance: BilevelInstance) -> int:
    """Weight multiplier separating the follower part from the leader part.

    With integer costs, d-values of two paths differ by at least 1, and every
    path's leader cost is at most the total; ``1 + total c`` therefore keeps
    the lexicographic order and lets ``W mod M`` recover the leader cost.
    """
    sc, _ = integer_scales(instance)
    return 1 + int(sum(e.c for e in instance.edges) * sc)


def build_kcycle_query(instance: BilevelInstance, X: frozenset, M: int, scales: tuple) -> KCycleInstance:
    """Cycle instance for one leader choice: follower edges plus X plus a dummy vertex joined to s and t.

    Kept edges appear in id order, followed by the two dummy edges; X enters
    as required edges.
    """
    sc, sd = scales
    dummy = instance.n
    kept = [e for e in instance.edges if not e.is_leader or e.id in X]
    edges = []
    required_edges = []
    for pos, e in enumerate(kept):
        d = ZERO if e.is_leader else e.d  # the follower never pays for leader edges
        edges.append((e.u, e.v, int(d * sd) * M + int(e.c * sc)))
        if e.id in X:
            required_edges.append(pos)
    edges.append((dummy, instance.s, 0))
    edges.append((dummy, instance.t, 0))
    return KCycleInstance(instance.n + 1, tuple(edges), frozenset({dummy}), frozenset(required_edges))


def _cycle_to_path(instance: BilevelInstance, cycle: tuple) -> Path:
    dummy = instance.n
    i = cycle.index(dummy)
    seq = cycle[i + 1 :] + cycle[:i]
    seq = tuple(x for x in seq if x < dummy)
    if seq[0] != instance.s:
        seq = tuple(reversed(seq))
    return instance.path_from_vertices(seq)


def solve_leader_strong_undir_via_kcycle(
    instance: BilevelInstance,
    oracle: Callable[[KCycleInstance], Optional[CycleResult]] = solve_kcycle_exact,
) -> SolveOutcome:
    """Strong completion on an undirected graph with one k-cycle query per leader choice.

    For each X the oracle returns the minimum of ``M*d + c`` over cycles
    through the dummy vertex and every edge of X, i.e. over follower paths
    completing X. Quotient and remainder by M give the follower's and the
    leader's cost. The oracle is an optimizer, so no threshold search is needed.
    """
    if instance.directed:
        raise ValueError("the k-cycle route needs an undirected instance")
    scales = integer_scales(instance)
    sc, sd = scales
    M = kcycle_big_m(instance)
    calls = 0
    best: Optional[SolveOutcome] = None
    for X in leader_subsets(instance):
        query = build_kcycle_query(instance, X, M, scales)
        calls += 1
        result = oracle(query)
        if result is None:
            continue
        W = int(result.weight)
        follower_cost, leader_cost = divmod(W, M)
        leader_value = Fraction(leader_cost, sc)
        if best is None or leader_value < best.leader_value:
            path = _cycle_to_path(instance, result.cycle)
            Y = frozenset(i for i in path.edges if not instance.edges[i].is_leader)
            best = SolveOutcome(Status.OPTIMAL, leader_value, Fraction(follower_cost, sd), X, FollowerResponse(Y, path))
    info = {"oracle_calls": calls, "M": M, "scales": scales}
    if best is None:
        return SolveOutcome.infeasible(**info)
    return SolveOutcome(best.status, best.leader_value, best.follower_value, best.X, best.Y, info=info)
