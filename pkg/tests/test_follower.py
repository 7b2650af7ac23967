import pytest
from hypothesis import given, strategies as st

from bilevel_sp.core import BilevelInstance, LexValue
from bilevel_sp.follower import (
    normalize_dag,
    solve_follower_strong_dag,
    solve_follower_strong_exact,
    solve_follower_weak,
)
from bilevel_sp.leader import leader_subsets
from bilevel_sp.oracle import brute_force_follower, random_instance


def test_weak_follower_on_e1(e1):
    for X in (set(), {0}):
        out = solve_follower_weak(e1, X)
        assert out.value == LexValue(0, 5)
        assert out.response.edges == {1}


def test_weak_follower_infeasible_without_leader_edge():
    inst = BilevelInstance.from_edges(2, [(0, 1, "L", 1, 1)], 0, 1)
    assert not solve_follower_weak(inst, set()).feasible
    assert solve_follower_weak(inst, {0}).value == LexValue(0, 0)


def test_strong_follower_on_e1(e1):
    out = solve_follower_strong_exact(e1, {0})
    assert out.value == LexValue(1, 0) and out.response.edges == {2}
    out = solve_follower_strong_exact(e1, set())
    assert out.value == LexValue(0, 5) and out.response.edges == {1}


def test_strong_follower_needs_a_path_through_x():
    no_e3 = BilevelInstance.from_edges(3, [(0, 1, "L", 0, 0), (0, 2, "F", 5, 0)], 0, 2)
    assert not solve_follower_strong_exact(no_e3, {0}).feasible


# s=0, a=1, t=2: s->a leader, a->t follower (c=3, d=1), s->t follower (c=1, d=1)
def small_dag(with_at=True):
    edges = [(0, 1, "L", 0, 0), (0, 2, "F", 1, 1)]
    if with_at:
        edges.append((1, 2, "F", 3, 1))
    return BilevelInstance.from_edges(3, edges, 0, 2, directed=True)


def test_dag_follower_examples():
    out = solve_follower_strong_dag(small_dag(), {0})
    assert out.response.edges == {2} and out.value == LexValue(1, 3)
    # without a->t, a cannot reach t at all, so X is not a chain
    out = solve_follower_strong_dag(small_dag(with_at=False), {0})
    assert not out.feasible and out.reason == "not a chain"


def test_dag_follower_empty_segment():
    # a reaches t only through the unchosen leader edge a->b
    inst = BilevelInstance.from_edges(
        4, [(0, 1, "L", 0, 0), (1, 2, "L", 0, 0), (2, 3, "F", 0, 0), (0, 3, "F", 1, 1)], 0, 3, directed=True
    )
    out = solve_follower_strong_dag(inst, {0})
    assert not out.feasible and out.reason == "empty segment"
    assert not solve_follower_strong_exact(inst, {0}).feasible


def test_dag_follower_rejects_non_chain():
    diamond = BilevelInstance.from_edges(
        4, [(0, 1, "L", 0, 0), (0, 2, "L", 0, 0), (1, 3, "F", 0, 0), (2, 3, "F", 0, 0)], 0, 3, directed=True
    )
    out = solve_follower_strong_dag(diamond, {0, 1})
    assert not out.feasible and out.reason == "not a chain"


def test_normalized_dag_requires_terminal_edges_in_x():
    # already in the single-terminal-edge form: s=0 -L-> 1 -F-> 2 -L-> t=3
    inst = BilevelInstance.from_edges(
        4, [(0, 1, "L", 0, 0), (1, 2, "F", 2, 1), (2, 3, "L", 0, 0)], 0, 3, directed=True
    )
    assert not normalize_dag(inst).wrapped
    assert solve_follower_strong_dag(inst, {0, 2}).value == LexValue(1, 2)
    out = solve_follower_strong_dag(inst, {0})
    assert not out.feasible and "terminal" in out.reason


def test_dag_follower_needs_directed_input(e1):
    with pytest.raises(ValueError):
        solve_follower_strong_dag(e1, set())


def _same(a, b):
    return a.status == b.status and a.value == b.value and a.response == b.response


@given(st.integers(0, 100_000), st.booleans())
def test_weak_follower_matches_oracle(seed, directed):
    inst = random_instance(6, p=0.5, leader_fraction=0.4, max_cost=3, directed=directed, seed=seed, max_leader_edges=4)
    for X in leader_subsets(inst):
        assert _same(solve_follower_weak(inst, X), brute_force_follower(inst, X, "weak"))


@given(st.integers(0, 100_000), st.booleans())
def test_strong_follower_matches_oracle(seed, directed):
    inst = random_instance(6, p=0.5, leader_fraction=0.4, max_cost=3, directed=directed, seed=seed, max_leader_edges=4)
    for X in leader_subsets(inst):
        assert _same(solve_follower_strong_exact(inst, X), brute_force_follower(inst, X, "strong"))


@given(st.integers(0, 100_000))
def test_dag_follower_matches_general_follower(seed):
    inst = random_instance(8, p=0.45, leader_fraction=0.4, max_cost=3, dag=True, seed=seed, max_leader_edges=4)
    for X in leader_subsets(inst):
        assert _same(solve_follower_strong_dag(inst, X), solve_follower_strong_exact(inst, X))


@given(st.integers(0, 100_000))
def test_weak_response_never_worse_than_strong(seed):
    # with the same X the weak follower has more options
    inst = random_instance(6, p=0.5, leader_fraction=0.4, directed=seed % 2 == 0, seed=seed, max_leader_edges=4)
    for X in leader_subsets(inst):
        strong = solve_follower_strong_exact(inst, X)
        if strong.feasible:
            assert solve_follower_weak(inst, X).value <= strong.value
