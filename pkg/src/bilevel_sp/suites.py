"""Seeded property suites shared by the ``verify`` command and the test-suite.

Each suite draws ``count`` cases from ``seed`` and returns a :class:`SuiteReport`
listing the failing case seeds, so a failure can be replayed alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .core import Graph, enumerate_st_paths
from .follower import solve_follower_strong_dag, solve_follower_strong_exact, solve_follower_weak
from .leader import (
    leader_subsets,
    solve_leader_strong_dag,
    solve_leader_strong_exact,
    solve_leader_strong_undir_via_kcycle,
    solve_leader_weak_enum,
)
from .kcycle import solve_kcycle_exact
from .oracle import (
    brute_force_bilevel,
    brute_force_follower,
    hamiltonian_st_path,
    max_independent_set,
    random_graph,
    random_instance,
    random_kcycle_instance,
    two_disjoint_paths,
)
from .reductions import (
    hampath_to_follower_strong,
    independent_set_to_weak,
    kcycle_to_strong_undir,
    undirected_to_directed,
    vdp_to_strong_dir,
    vertex_fixing,
)


@dataclass
class SuiteReport:
    name: str
    passed: int = 0
    failures: list = field(default_factory=list)

    @property
    def failed(self) -> int:
        return len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, condition: bool, case) -> None:
        if condition:
            self.passed += 1
        else:
            self.failures.append(case)


def case_seed(seed: int, i: int) -> int:
    return random.Random(f"{seed}:{i}").getrandbits(64)


def mixed_instance(seed: int, n_max: int = 8, max_edges: int = 16):
    """Random directed or undirected instance with at most ``max_edges`` edges."""
    rng = random.Random(seed)
    return random_instance(
        n=rng.randint(2, n_max),
        p=rng.choice((0.3, 0.45, 0.6)),
        leader_fraction=rng.choice((0.2, 0.35, 0.5)),
        max_cost=rng.choice((1, 3, 6)),
        directed=rng.random() < 0.5,
        seed=seed,
        max_leader_edges=6,
        max_edges=max_edges,
    )


def dag_instance(seed: int, n_max: int = 10):
    rng = random.Random(seed)
    return random_instance(
        n=rng.randint(2, n_max),
        p=rng.choice((0.3, 0.5)),
        leader_fraction=rng.choice((0.3, 0.5)),
        max_cost=rng.choice((1, 4)),
        dag=True,
        seed=seed,
        max_leader_edges=5,
    )


def undirected_instance(seed: int, n_max: int = 9):
    rng = random.Random(seed)
    return random_instance(
        n=rng.randint(2, n_max),
        p=rng.choice((0.3, 0.5)),
        leader_fraction=0.3,
        max_cost=rng.choice((1, 4)),
        seed=seed,
        max_leader_edges=3,
    )


def same_outcome(a, b) -> bool:
    """Status plus exact leader value (witness X may differ among ties)."""
    return a.status == b.status and a.leader_value == b.leader_value


def check_weak_witness(instance) -> bool:
    """The weak optimum's X lies on the response path, and X cut down to that path is still optimal."""
    best = solve_leader_weak_enum(instance)
    if not best.feasible:
        return True
    path = best.Y.path
    on_path = frozenset(i for i in path.edges if instance.edges[i].is_leader)
    if not best.X <= on_path or best.Y.edges | on_path != frozenset(path.edges):
        return False
    again = solve_follower_weak(instance, on_path)
    return again.feasible and instance.cost(on_path) + again.value.secondary == best.leader_value


def run_strong_below_weak(seed: int, count: int) -> SuiteReport:
    report = SuiteReport("corollary1")
    for i in range(count):
        cs = case_seed(seed, i)
        inst = mixed_instance(cs)
        strong, weak = solve_leader_strong_exact(inst), solve_leader_weak_enum(inst)
        report.check(weak.feasible and strong.feasible and strong.leader_value <= weak.leader_value, cs)
    return report


def run_weak_path_witness(seed: int, count: int) -> SuiteReport:
    report = SuiteReport("lemma3")
    for i in range(count):
        cs = case_seed(seed, i)
        report.check(check_weak_witness(mixed_instance(cs)), cs)
    return report


def run_dag_equiv(seed: int, count: int) -> SuiteReport:
    report = SuiteReport("dag-equiv")
    for i in range(count):
        cs = case_seed(seed, i)
        inst = dag_instance(cs)
        ok = same_outcome(solve_leader_strong_dag(inst), brute_force_bilevel(inst, "strong"))
        for X in leader_subsets(inst):
            a, b = solve_follower_strong_dag(inst, X), brute_force_follower(inst, X, "strong")
            ok = ok and a.status == b.status and a.value == b.value
        report.check(ok, cs)
    return report


def run_kcycle_equiv(seed: int, count: int) -> SuiteReport:
    report = SuiteReport("kcycle-equiv")
    for i in range(count):
        cs = case_seed(seed, i)
        inst = undirected_instance(cs)
        report.check(same_outcome(solve_leader_strong_undir_via_kcycle(inst), brute_force_bilevel(inst, "strong")), cs)
    return report


def _strong_value(instance):
    out = solve_leader_strong_exact(instance)
    return out.leader_value if out.feasible else None


def run_reductions(seed: int, count: int) -> SuiteReport:
    """One case per reduction family in rotation, each with both sides brute-forced.

    The independent-set gadget is only checked in the direction it supports:
    a weak optimum at most 3n - k implies an independent set of size k.
    """
    report = SuiteReport("reductions")
    for i in range(count):
        cs = case_seed(seed, i)
        rng = random.Random(cs)
        kind = i % 6
        if kind == 0:
            inst = undirected_instance(cs, n_max=6)
            d, _ = undirected_to_directed(inst)
            ok = all(
                brute_force_bilevel(inst, v).leader_value == brute_force_bilevel(d, v).leader_value
                for v in ("weak", "strong")
            )
        elif kind == 1:
            inst = undirected_instance(cs, n_max=7)
            W = set(rng.sample(range(inst.n), rng.randint(0, min(3, inst.n))))
            ok = check_vertex_fixing(inst, W)
        elif kind == 2:
            n = rng.randint(3, 6)
            G = random_graph(n, rng.choice((0.4, 0.7)), seed=cs)
            s, t = rng.sample(range(n), 2)
            red = hampath_to_follower_strong(G, s, t)
            f = solve_follower_strong_exact(red.instance, red.X)
            ok = (f.feasible and f.value.primary <= red.threshold) == (hamiltonian_st_path(G, s, t) is not None)
        elif kind == 3:
            G, terminals = vdp_graph(cs)
            value = _strong_value(vdp_to_strong_dir(G, *terminals))
            ok = value is not None and (value == 0) == (two_disjoint_paths(G, *terminals) is not None)
            ok = ok and (value == 0 or value >= 1)
        elif kind == 4:
            kc = random_kcycle_instance(rng.randint(4, 7), 0.6, rng.randint(3, 4), 4, seed=cs)
            ok = check_kcycle_reduction(kc)
        else:
            n = rng.randint(1, 4)
            G = random_graph(n, 0.5, seed=cs)
            k = rng.randint(1, n)
            inst, T = independent_set_to_weak(G, k)
            value = brute_force_bilevel(inst, "weak").leader_value
            ok = value > T or max_independent_set(G) >= k
        report.check(ok, cs)
    return report


def check_vertex_fixing(instance, W, eps=1) -> bool:
    """Items (i)-(iii) of the vertex-fixing guarantee on one input, all by brute force."""
    vf = vertex_fixing(instance, W, eps)
    new = vf.instance
    if len(new.leader_edges) > 2 * len(vf.W) + 4 * len(instance.leader_edges):
        return False
    fixed = brute_force_bilevel(new, "strong")
    through_W = any(vf.W <= set(p.vertices) for p in enumerate_st_paths(instance))
    at_least_M = not fixed.feasible or fixed.leader_value >= vf.M
    if at_least_M != (not through_W):
        return False
    if at_least_M:
        return True
    restricted = brute_force_bilevel(instance, "strong", required=vf.W)
    if fixed.leader_value != restricted.leader_value:
        return False
    X = vf.contract(fixed.X)
    d_star = brute_force_follower(instance, X, "strong", required=vf.W)
    return d_star.feasible and fixed.follower_value == d_star.value.primary + vf.eps


def check_kcycle_reduction(kc) -> bool:
    red = kcycle_to_strong_undir(kc)
    if len(red.instance.leader_edges) != 2 * len(kc.required) - 2:
        return False
    direct = solve_kcycle_exact(kc)
    decoded = red.decode(_strong_value(red.instance))
    return decoded == (direct.weight if direct is not None else None)


def vdp_graph(seed: int, n_max: int = 8):
    """Random directed graph with four distinct terminals and no arcs s1->t2 or t1->s2."""
    rng = random.Random(seed)
    n = rng.randint(4, n_max)
    s1, t1, s2, t2 = rng.sample(range(n), 4)
    banned = {(s1, t2), (t1, s2)}
    p = rng.choice((0.2, 0.3, 0.45))
    arcs = tuple(
        (u, v) for u in range(n) for v in range(n) if u != v and (u, v) not in banned and rng.random() < p
    )
    return Graph(n, arcs, directed=True), (s1, t1, s2, t2)


SUITES = {
    "corollary1": run_strong_below_weak,
    "lemma3": run_weak_path_witness,
    "dag-equiv": run_dag_equiv,
    "kcycle-equiv": run_kcycle_equiv,
    "reductions": run_reductions,
}


def all_graphs(n: int, directed: bool = False):
    """Every labelled simple graph on n vertices."""
    if directed:
        pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    else:
        pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, tuple(p for i, p in enumerate(pairs) if mask >> i & 1), directed)
