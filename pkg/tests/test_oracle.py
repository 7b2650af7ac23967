from hypothesis import given, strategies as st

from bilevel_sp.core import BilevelInstance, LexValue, Graph, is_acyclic
from bilevel_sp.fileformat import format_instance
from bilevel_sp.follower import solve_follower_strong_exact, solve_follower_weak
from bilevel_sp.oracle import (
    brute_force_bilevel,
    hamiltonian_st_path,
    max_independent_set,
    random_instance,
    solve_minmaxham_exact,
    two_disjoint_paths,
)
from bilevel_sp.reductions import MinMaxHamInstance
from bilevel_sp.suites import check_weak_witness

from test_reductions import SQUARE


def test_e1(e1):
    assert brute_force_bilevel(e1, "weak").leader_value == 5
    assert brute_force_bilevel(e1, "strong").leader_value == 0


def test_no_leader_edges_reduces_to_follower():
    inst = random_instance(6, leader_fraction=0, seed=4)
    assert inst.leader_edges == ()
    weak, strong = solve_follower_weak(inst, ()), solve_follower_strong_exact(inst, ())
    assert brute_force_bilevel(inst, "weak").leader_value == weak.value.secondary
    assert brute_force_bilevel(inst, "strong").leader_value == strong.value.secondary


def test_no_path():
    inst = BilevelInstance.from_edges(3, [(0, 1, "F", 0, 0)], 0, 2)
    assert not brute_force_bilevel(inst, "weak").feasible


def test_classic_oracles():
    assert max_independent_set(Graph(3, [(0, 1), (1, 2), (0, 2)])) == 1
    assert max_independent_set(Graph(2, [])) == 2
    assert hamiltonian_st_path(Graph(3, [(0, 1), (1, 2)]), 0, 2) == (0, 1, 2)
    assert hamiltonian_st_path(Graph(3, [(0, 1), (0, 2)]), 0, 2) is None
    # both pairs must pass through vertex 4
    diamond = Graph(5, [(0, 4), (4, 1), (2, 4), (4, 3)], directed=True)
    assert two_disjoint_paths(diamond, 0, 1, 2, 3) is None
    assert two_disjoint_paths(Graph(4, [(0, 1), (2, 3)], True), 0, 1, 2, 3) == ((0, 1), (2, 3))


def test_minmaxham_oracle():
    assert solve_minmaxham_exact(MinMaxHamInstance(SQUARE, 0, 3, 2, 3, {0})) == (True, frozenset({0}))
    assert not solve_minmaxham_exact(MinMaxHamInstance(SQUARE, 0, 3, 2, 2, {0})).yes
    # two Hamiltonian paths 0-1-2-3 and 0-2-1-3; B is empty so both fall in one group
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 2), (1, 3)])
    assert not solve_minmaxham_exact(MinMaxHamInstance(g, 0, 3, 2, 3, set())).yes


def test_generator_is_reproducible():
    a = random_instance(7, directed=True, seed=1)
    b = random_instance(7, directed=True, seed=1)
    assert format_instance(a) == format_instance(b)
    assert format_instance(a) != format_instance(random_instance(7, directed=True, seed=2))


@given(st.integers(0, 2**64 - 1))
def test_generator_flags(seed):
    dag = random_instance(7, p=0.3, dag=True, seed=seed)
    assert is_acyclic(dag)
    sparse = random_instance(7, p=0.05, seed=seed)
    assert brute_force_bilevel(sparse, "weak").feasible


@given(st.integers(0, 100_000), st.booleans())
def test_oracle_strong_below_weak_and_weak_witness(seed, directed):
    inst = random_instance(6, p=0.5, leader_fraction=0.4, directed=directed, seed=seed, max_leader_edges=5)
    assert brute_force_bilevel(inst, "strong").leader_value <= brute_force_bilevel(inst, "weak").leader_value
    weak = brute_force_bilevel(inst, "weak")
    on_path = {i for i in weak.Y.path.edges if inst.edges[i].is_leader}
    assert weak.X <= on_path
    assert check_weak_witness(inst)


def test_lex_value_reported():
    inst = BilevelInstance.from_edges(2, [(0, 1, "F", 2, 3)], 0, 1)
    out = brute_force_bilevel(inst, "strong")
    assert (out.leader_value, out.follower_value) == (2, 3)
    assert solve_follower_weak(inst, ()).value == LexValue(3, 2)
