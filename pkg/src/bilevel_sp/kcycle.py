"""Shortest cycle through a required vertex set, solved by exhaustive search."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .core import ZERO, as_cost


@dataclass(frozen=True)
class KCycleInstance:
    """Undirected weighted graph with required vertices and (optionally) required edges.

    ``edges`` holds ``(u, v, w)`` triples; ``required_edges`` holds positions in
    ``edges``. Call :func:`normalize_required_edges` to turn the latter into
    required vertices.
    """

    n: int
    edges: tuple
    required: frozenset = frozenset()
    required_edges: frozenset = frozenset()
    threshold: Optional[Fraction] = None

    def __post_init__(self):
        edges = tuple((u, v, as_cost(w)) for u, v, w in self.edges)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "required", frozenset(self.required))
        object.__setattr__(self, "required_edges", frozenset(self.required_edges))
        if self.threshold is not None:
            object.__setattr__(self, "threshold", as_cost(self.threshold))
        seen = set()
        for u, v, _ in edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"parallel edge {key}")
            seen.add(key)
        for x in self.required:
            if not 0 <= x < self.n:
                raise ValueError(f"required vertex {x} outside 0..{self.n - 1}")
        for i in self.required_edges:
            if not 0 <= i < len(edges):
                raise ValueError(f"required edge {i} does not exist")

    @property
    def k(self) -> int:
        return len(self.required) + len(self.required_edges)

    def adjacency(self) -> list:
        adj = [[] for _ in range(self.n)]
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        for a in adj:
            a.sort()
        return adj


class CycleResult(NamedTuple):
    weight: Fraction
    cycle: tuple  # vertex sequence, first vertex not repeated at the end


def normalize_required_edges(inst: KCycleInstance) -> KCycleInstance:
    """Subdivide every required edge through a fresh midpoint and require the midpoint.

    The edge keeps its position and becomes ``{u, mid}`` with the full weight;
    ``{mid, v}`` is appended with weight 0.
    """
    if not inst.required_edges:
        return inst
    edges = list(inst.edges)
    required = set(inst.required)
    n = inst.n
    for i in sorted(inst.required_edges):
        u, v, w = edges[i]
        mid = n
        n += 1
        edges[i] = (u, mid, w)
        edges.append((mid, v, ZERO))
        required.add(mid)
    return KCycleInstance(n, tuple(edges), frozenset(required), frozenset(), inst.threshold)


def canonical_cycle(cycle) -> tuple:
    """Rotate so the smallest vertex leads and pick the direction with the smaller second vertex."""
    cycle = tuple(cycle)
    i = cycle.index(min(cycle))
    rotated = cycle[i:] + cycle[:i]
    reverse = (rotated[0],) + tuple(reversed(rotated[1:]))
    return min(rotated, reverse)


def solve_kcycle_exact(inst: KCycleInstance, start: Optional[int] = None) -> Optional[CycleResult]:
    """Minimum weight simple cycle (at least 3 vertices) through every required vertex.

    Cycles are grown from ``start`` (default: the smallest required vertex) and
    each is reported in canonical form; among equally light cycles the
    canonically smallest one is the witness. Returns ``None`` when no cycle
    covers the required set.
    """
    inst = normalize_required_edges(inst)
    required = inst.required
    adj = inst.adjacency()
    if start is not None and required and start not in required:
        raise ValueError("start must be a required vertex")
    if start is not None:
        anchors = [start]
    elif required:
        anchors = [min(required)]
    else:
        anchors = list(range(inst.n))

    best: Optional[CycleResult] = None
    for anchor in anchors:
        # without required vertices, a cycle is charged to its smallest vertex
        floor = anchor if not required else -1
        on_path = [False] * inst.n
        on_path[anchor] = True
        path = [anchor]
        missing = set(required) - {anchor}

        def extend(x: int, weight: Fraction):
            nonlocal best
            for y, w in adj[x]:
                if y != anchor and y <= floor:
                    continue
                total = weight + w
                if best is not None and total > best.weight:
                    continue
                if y == anchor:
                    if len(path) >= 3 and not missing:
                        cand = CycleResult(total, canonical_cycle(path))
                        if best is None or (cand.weight, cand.cycle) < (best.weight, best.cycle):
                            best = cand
                    continue
                if on_path[y]:
                    continue
                on_path[y] = True
                path.append(y)
                was_missing = y in missing
                missing.discard(y)
                extend(y, total)
                if was_missing:
                    missing.add(y)
                path.pop()
                on_path[y] = False

        extend(anchor, ZERO)
    return best


def decide_kcycle(inst: KCycleInstance, threshold: Optional[Fraction] = None) -> bool:
    """Is there a cycle through the required set of weight at most the threshold?"""
    T = inst.threshold if threshold is None else as_cost(threshold)
    if T is None:
        raise ValueError("decide_kcycle needs a threshold")
    result = solve_kcycle_exact(inst)
    return result is not None and result.weight <= T
