"""Exact solvers, gadget reductions and brute-force oracles for bilevel shortest path."""

from .core import (
    BilevelInstance,
    Cost,
    Edge,
    FollowerOutcome,
    FollowerResponse,
    Graph,
    LexValue,
    NotAcyclicError,
    Owner,
    Path,
    SolveOutcome,
    Status,
    as_cost,
    enumerate_st_paths,
    format_cost,
    lex_shortest_path,
)
from .fileformat import FormatError, format_instance, parse_instance
from .follower import solve_follower_strong_dag, solve_follower_strong_exact, solve_follower_weak
from .kcycle import KCycleInstance, decide_kcycle, normalize_required_edges, solve_kcycle_exact
from .leader import (
    solve_leader_strong_dag,
    solve_leader_strong_exact,
    solve_leader_strong_undir_via_kcycle,
    solve_leader_weak_enum,
)
from .oracle import brute_force_bilevel, brute_force_follower, random_instance

__all__ = [name for name in dir() if not name.startswith("_")]
