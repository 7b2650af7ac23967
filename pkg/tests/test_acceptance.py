"""One test per acceptance criterion. Each records a PASS/FAIL line that the
terminal summary prints at the end of the run (see conftest.py)."""

import random
import time
from itertools import combinations, product

import numpy as np
import pytest

from bilevel_sp.core import Graph
from bilevel_sp.follower import solve_follower_strong_dag, solve_follower_strong_exact, solve_follower_weak
from bilevel_sp.formulas import DnfFormula, Literal, cnf_equivalence_transform
from bilevel_sp.leader import (
    leader_subsets,
    solve_leader_strong_dag,
    solve_leader_strong_exact,
    solve_leader_strong_undir_via_kcycle,
    solve_leader_weak_enum,
)
from bilevel_sp.oracle import (
    brute_force_bilevel,
    brute_force_follower,
    hamiltonian_st_path,
    max_independent_set,
    random_graph,
    random_kcycle_instance,
    solve_minmaxham_exact,
    two_disjoint_paths,
)
from bilevel_sp.reductions import (
    MinMaxHamInstance,
    hampath_to_follower_strong,
    independent_set_to_weak,
    kcycle_to_strong_undir,
    minmaxham_to_strong_undir,
    vdp_to_strong_dir,
)
from bilevel_sp.kcycle import solve_kcycle_exact
from bilevel_sp.suites import (
    all_graphs,
    case_seed,
    check_vertex_fixing,
    check_weak_witness,
    dag_instance,
    mixed_instance,
    undirected_instance,
    vdp_graph,
)

from conftest import ACCEPTANCE_RESULTS

SEED = 20240601
PART_A: dict = {}


def record(number, passed, detail):
    ACCEPTANCE_RESULTS[number] = (passed, detail)
    print(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")
    assert passed, detail


class Clock:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def seeds(tag, count):
    return [case_seed(hash_free(tag), i) for i in range(count)]


def hash_free(tag):
    # str hashing is salted per process; derive a stable integer instead
    return SEED + sum(ord(ch) * 131**i for i, ch in enumerate(tag)) % 10**9


def test_criterion_01_weak_follower_matches_enumeration():
    bad, checks = [], 0
    with Clock() as clock:
        for cs in seeds("weak-follower", 500):
            inst = mixed_instance(cs, n_max=8, max_edges=16)
            assert inst.n <= 8 and len(inst.edges) <= 16
            for X in leader_subsets(inst):
                a, b = solve_follower_weak(inst, X), brute_force_follower(inst, X, "weak")
                checks += 1
                if a.status != b.status or a.value != b.value:
                    bad.append((cs, sorted(X)))
    ok = not bad and clock.seconds < 30
    record(1, ok, f"500 instances, {checks} (instance, X) pairs, {len(bad)} mismatches, {clock.seconds:.1f}s < 30s")


def test_criterion_02_dag_solvers_match_brute_force():
    bad, checks = [], 0
    with Clock() as clock:
        for cs in seeds("dag", 300):
            inst = dag_instance(cs, n_max=10)
            assert inst.n <= 10 and len(inst.leader_edges) <= 5
            a, b = solve_leader_strong_dag(inst), brute_force_bilevel(inst, "strong")
            if a.status != b.status or a.leader_value != b.leader_value or a.follower_value != b.follower_value:
                bad.append(cs)
            for X in leader_subsets(inst):
                fa, fb = solve_follower_strong_dag(inst, X), brute_force_follower(inst, X, "strong")
                checks += 1
                if fa.status != fb.status or fa.value != fb.value:
                    bad.append((cs, sorted(X)))
    ok = not bad and clock.seconds < 60
    record(2, ok, f"300 DAGs, {checks} follower checks, {len(bad)} mismatches, {clock.seconds:.1f}s < 60s")


@pytest.fixture(scope="module")
def feasible_corpus():
    return [mixed_instance(cs) for cs in seeds("strong-vs-weak", 1000)]


def test_criterion_03_strong_never_above_weak(feasible_corpus):
    bad, tighter = [], 0
    with Clock() as clock:
        for inst in feasible_corpus:
            strong, weak = solve_leader_strong_exact(inst), solve_leader_weak_enum(inst)
            if not (strong.feasible and weak.feasible and strong.leader_value <= weak.leader_value):
                bad.append(inst)
            elif strong.leader_value < weak.leader_value:
                tighter += 1
    ok = not bad and clock.seconds < 120
    record(3, ok, f"1000 instances, {len(bad)} violations, {tighter} strictly below, {clock.seconds:.1f}s < 120s")


def test_criterion_04_weak_optimum_has_a_path_witness(feasible_corpus):
    bad = [i for i, inst in enumerate(feasible_corpus) if not check_weak_witness(inst)]
    record(4, not bad, f"1000 instances, {len(bad)} without a simple-path witness")


def test_criterion_05_independent_set_replay():
    """Literal check of OPT_w <= 3n - k  <=>  alpha(G) >= k over every graph on at most 5 vertices."""
    checks, forward, backward, example = 0, 0, 0, None
    with Clock() as clock:
        for n in range(1, 6):
            for G in all_graphs(n):
                alpha = max_independent_set(G)
                for orientation in ("undirected", "dag"):
                    # the gadget depends on k only through the threshold 3n - k
                    inst, _ = independent_set_to_weak(G, 1, orientation)
                    value = brute_force_bilevel(inst, "weak").leader_value
                    for k in range(1, n + 1):
                        checks += 1
                        cheap, large = value <= 3 * n - k, alpha >= k
                        if large and not cheap:
                            forward += 1
                            example = example or (n, G.edges, k, orientation, value)
                        if cheap and not large:
                            backward += 1
    ok = forward == backward == 0 and clock.seconds < 600
    record(
        5,
        ok,
        f"{checks} checks; alpha>=k but OPT_w>3n-k: {forward}; OPT_w<=3n-k but alpha<k: {backward}; "
        f"first counterexample (n, edges, k, orientation, OPT_w) = {example}; {clock.seconds:.1f}s < 600s",
    )


def test_criterion_06_vertex_fixing_replay():
    bad = []
    for cs in seeds("vertex-fixing", 200):
        rng = random.Random(cs)
        inst = undirected_instance(cs, n_max=7)
        W = set(rng.sample(range(inst.n), rng.randint(0, min(3, inst.n))))
        eps = rng.choice((1, 2))
        if not check_vertex_fixing(inst, W, eps):
            bad.append(cs)
    record(6, not bad, f"200 (I, W) pairs, {len(bad)} violating (i), (ii) with the +eps offset, or (iii)")


def hampath_cases():
    """Every graph on 3 or 4 vertices with every ordered (s, t); on 5 vertices
    every labelled graph with s = 0, t = 4, which meets each (G, s, t) up to isomorphism."""
    for n in (3, 4):
        for G in all_graphs(n):
            for s, t in product(range(n), repeat=2):
                if s != t:
                    yield G, s, t
    for G in all_graphs(5):
        yield G, 0, 4


def test_criterion_07_hamiltonian_path_replay():
    bad, checks, yes = [], 0, 0
    with Clock() as clock:
        for G, s, t in hampath_cases():
            red = hampath_to_follower_strong(G, s, t, eps=1)
            f = solve_follower_strong_exact(red.instance, red.X)
            cheap = f.feasible and f.value.primary <= red.threshold
            ham = hamiltonian_st_path(G, s, t) is not None
            checks += 1
            yes += ham
            if cheap != ham:
                bad.append((G.edges, s, t))
    record(7, not bad, f"{checks} (G, s, t) cases ({yes} Hamiltonian), {len(bad)} mismatches, {clock.seconds:.1f}s")


@pytest.fixture(scope="module")
def vdp_corpus():
    return [vdp_graph(cs, n_max=8) for cs in seeds("vdp", 150)]


def test_criterion_08_disjoint_paths_replay(vdp_corpus):
    bad, gap, yes = [], [], 0
    for G, terminals in vdp_corpus:
        out = solve_leader_strong_exact(vdp_to_strong_dir(G, *terminals))
        disjoint = two_disjoint_paths(G, *terminals) is not None
        yes += disjoint
        if not out.feasible or (out.leader_value == 0) != disjoint:
            bad.append((G.edges, terminals))
        elif not (out.leader_value == 0 or out.leader_value >= 1):
            gap.append((G.edges, terminals))
    record(8, not bad and not gap, f"150 graphs ({yes} yes), {len(bad)} mismatches, {len(gap)} values in (0, 1)")


def test_criterion_09a_kcycle_route_matches_brute_force():
    bad = []
    for cs in seeds("kcycle-route", 150):
        inst = undirected_instance(cs, n_max=9)
        assert len(inst.leader_edges) <= 3
        a, b = solve_leader_strong_undir_via_kcycle(inst), brute_force_bilevel(inst, "strong")
        if a.status != b.status or a.leader_value != b.leader_value:
            bad.append(cs)
    PART_A["9a"] = (not bad, f"150 instances, {len(bad)} mismatches")
    assert not bad


def test_criterion_09b_kcycle_value_map():
    bad, big_m, checks = [], 0, 0
    with Clock() as clock:
        for cs in seeds("kcycle-map", 150):
            rng = random.Random(cs)
            kc = random_kcycle_instance(rng.randint(4, 9), rng.choice((0.3, 0.45, 0.6)), rng.randint(3, 4), 5, seed=cs)
            red = kcycle_to_strong_undir(kc)
            out = solve_leader_strong_exact(red.instance)
            value = out.leader_value if out.feasible else None
            direct = solve_kcycle_exact(kc)
            big_m += value is None or value >= red.M
            checks += 1
            if red.decode(value) != (direct.weight if direct is not None else None):
                bad.append(cs)
    ok = not bad and big_m > 0 and PART_A.get("9a", (False,))[0]
    detail_a = PART_A.get("9a", (False, "not run"))[1]
    record(
        9,
        ok,
        f"(a) {detail_a}; (b) {checks} k-cycle instances, {big_m} in the infeasible/>=M branch, "
        f"{len(bad)} mismatches, {clock.seconds:.1f}s",
    )


# -- criterion 10 --------------------------------------------------------------

VARS = ("v1", "v2", "v3", "v4")


def all_conjunctions():
    for width in (1, 2, 3):
        for names in combinations(VARS, width):
            for signs in product((True, False), repeat=width):
                yield tuple(Literal(v, s) for v, s in zip(names, signs))


def projection_holds(phi):
    """For every (x, y, z): some auxiliary assignment satisfies the CNF iff z = not phi(x, y)."""
    cnf = cnf_equivalence_transform(phi)
    names = cnf.variables
    col = {v: i for i, v in enumerate(names)}
    rows = ((np.arange(1 << len(names))[:, None] >> np.arange(len(names))) & 1).astype(bool)
    sat = np.ones(len(rows), dtype=bool)
    for clause in cnf.clauses:
        hit = np.zeros(len(rows), dtype=bool)
        for l in clause:
            hit |= rows[:, col[l.var]] == l.positive
        sat &= hit
    free = [col[v] for v in VARS] + [col[cnf.z]]
    key = rows[:, free] @ (1 << np.arange(len(free)))
    reachable = np.zeros(1 << len(free), dtype=bool)
    reachable[key[sat]] = True
    for code in range(1 << len(free)):
        bits = [(code >> i) & 1 == 1 for i in range(len(free))]
        a = dict(zip(VARS, bits))
        if reachable[code] != (bits[-1] == (not phi.evaluate(a))):
            return False
    return True


def minmaxham_cases():
    """Handcrafted instances first, then random ones with a degree-3 vertex v."""
    square = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 2)])
    both = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 2), (1, 3)])
    cases = [
        MinMaxHamInstance(square, 0, 3, 2, 3, {0}),
        MinMaxHamInstance(square, 0, 3, 2, 2, {0}),
        MinMaxHamInstance(square, 0, 3, 2, 3, set()),
        MinMaxHamInstance(both, 0, 3, 2, 3, set()),
        MinMaxHamInstance(both, 0, 3, 2, 3, {0}),
        MinMaxHamInstance(Graph(5, [(0, 2), (1, 2), (2, 3), (0, 4)]), 0, 1, 2, 0, {3}),
    ]
    rng = random.Random(SEED)
    sizes = [5] * 20 + [6] * 20 + [7] * 4
    while len(cases) < 50:
        n = sizes[len(cases) - 6]
        G = random_graph(n, rng.choice((0.4, 0.5, 0.6)), seed=rng.getrandbits(32))
        s, t = rng.sample(range(n), 2)
        deg3 = [v for v in range(n) if G.degree(v) == 3 and v not in (s, t)]
        if not deg3:
            continue
        v = rng.choice(deg3)
        at_v = [i for i, (a, b) in enumerate(G.edges) if v in (a, b)]
        rest = [i for i in range(len(G.edges)) if i not in at_v]
        B = rng.sample(rest, min(len(rest), rng.randint(0, 2 if n < 7 else 1)))
        cases.append(MinMaxHamInstance(G, s, t, v, rng.choice(at_v), B))
    return cases


def test_criterion_10_cnf_transform_and_minmaxham():
    conj = list(all_conjunctions())
    formulas = [(c,) for c in conj] + [(a, b) for a, b in combinations(conj, 2)] + [(c, c) for c in conj]
    bad_cnf = [f for f in formulas if not projection_holds(DnfFormula(f, VARS[:2], VARS[2:]))]
    bad_mmh, yes = [], 0
    with Clock() as clock:
        for mmh in minmaxham_cases():
            answer = solve_minmaxham_exact(mmh).yes
            out = solve_leader_strong_exact(minmaxham_to_strong_undir(mmh))
            yes += answer
            if answer != (out.feasible and out.leader_value == 0):
                bad_mmh.append(mmh)
    ok = not bad_cnf and not bad_mmh
    record(
        10,
        ok,
        f"{len(formulas)} DNF formulas, {len(bad_cnf)} projection failures; "
        f"50 Min-Max-Ham instances ({yes} yes), {len(bad_mmh)} mismatches, {clock.seconds:.1f}s",
    )


def test_criterion_11_follower_feasibility_is_disjoint_paths(vdp_corpus):
    bad = []
    for G, terminals in vdp_corpus:
        inst = vdp_to_strong_dir(G, *terminals)
        f = solve_follower_strong_exact(inst, inst.leader_edges)
        if f.feasible != (two_disjoint_paths(G, *terminals) is not None):
            bad.append((G.edges, terminals))
    record(11, not bad, f"150 graphs, {len(bad)} mismatches with X = all leader edges")
