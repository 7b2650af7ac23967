"""Instance model, exact costs and the graph primitives every solver shares.

Costs are :class:`fractions.Fraction` values throughout; nothing on a solver
path ever touches a float.
"""

from __future__ import annotations

import enum
import heapq
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Iterator, NamedTuple, Optional

Cost = Fraction
ZERO = Fraction(0)


class NotAcyclicError(ValueError):
    """Raised when a DAG-only routine receives a graph with a directed cycle."""


def as_cost(value) -> Fraction:
    """Convert ``value`` to an exact nonnegative cost.

    Accepts ints, Fractions and strings such as ``"7/2"``. Floats are refused
    because they would silently lose exactness.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"costs must be exact (int, Fraction or 'p/q'), got {value!r}")
    if isinstance(value, str):
        value = value.strip()
        if any(ch in value for ch in ".eE"):
            raise ValueError(f"cost {value!r} is not an integer or p/q rational")
    cost = Fraction(value)
    if cost < 0:
        raise ValueError(f"negative cost {value!r}")
    return cost


def format_cost(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Owner(enum.Enum):
    LEADER = "L"
    FOLLOWER = "F"


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True, order=True)
class LexValue:
    """Follower objective first, leader objective second.

    Field order makes the generated comparison lexicographic, which is the
    optimistic tie-breaking rule: the follower minimizes its own cost and,
    among equals, picks what is cheapest for the leader.
    """

    primary: Fraction = ZERO
    secondary: Fraction = ZERO

    def __add__(self, other: "LexValue") -> "LexValue":
        return LexValue(self.primary + other.primary, self.secondary + other.secondary)


LEX_ZERO = LexValue()


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    owner: Owner
    c: Fraction
    d: Fraction

    @property
    def is_leader(self) -> bool:
        return self.owner is Owner.LEADER

    def other(self, x: int) -> int:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise ValueError(f"vertex {x} is not an endpoint of edge {self.id}")


class Path(NamedTuple):
    """A simple path as its vertex sequence plus the ids of its edges."""

    vertices: tuple
    edges: tuple

    def __len__(self) -> int:  # number of edges
        return len(self.edges)


EMPTY_PATH_EDGES: tuple = ()


def _endpoint_key(directed: bool, u: int, v: int) -> tuple:
    return (u, v) if directed else (min(u, v), max(u, v))


@dataclass(frozen=True)
class Graph:
    """Plain graph used as input by the classic source problems."""

    n: int
    edges: tuple
    directed: bool = False

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            key = _endpoint_key(self.directed, u, v)
            if key in seen:
                raise ValueError(f"parallel edge ({u}, {v})")
            seen.add(key)

    @cached_property
    def neighbors(self) -> tuple:
        adj = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            if not self.directed:
                adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    def has_edge(self, u: int, v: int) -> bool:
        return _endpoint_key(self.directed, u, v) in self._edge_keys

    @cached_property
    def _edge_keys(self) -> frozenset:
        return frozenset(_endpoint_key(self.directed, u, v) for u, v in self.edges)

    def degree(self, x: int) -> int:
        return sum(1 for u, v in self.edges if x in (u, v))


@dataclass(frozen=True)
class BilevelInstance:
    """Graph, leader/follower edge partition, the two cost functions, s and t.

    Edge ids are dense and equal to the edge's position in ``edges``.
    Instances are immutable; derived lookups are cached on first use.
    """

    directed: bool
    n: int
    edges: tuple
    s: int
    t: int

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.n < 1:
            raise ValueError("an instance needs at least one vertex")
        for x, name in ((self.s, "s"), (self.t, "t")):
            if not 0 <= x < self.n:
                raise ValueError(f"{name}={x} outside 0..{self.n - 1}")
        if self.s == self.t:
            raise ValueError("s and t must differ")
        seen = {}
        for i, e in enumerate(self.edges):
            if e.id != i:
                raise ValueError(f"edge at position {i} carries id {e.id}")
            if not (0 <= e.u < self.n and 0 <= e.v < self.n):
                raise ValueError(f"edge {i} has an endpoint outside 0..{self.n - 1}")
            if e.u == e.v:
                raise ValueError(f"edge {i} is a self-loop")
            if e.c < 0 or e.d < 0:
                raise ValueError(f"edge {i} has a negative cost")
            key = _endpoint_key(self.directed, e.u, e.v)
            if key in seen:
                raise ValueError(f"parallel edge: edges {seen[key]} and {i} join {key}")
            seen[key] = i

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, s: int, t: int, directed: bool = False):
        """Build from ``(u, v, owner, c, d)`` tuples; owner is ``'L'``/``'F'`` or an :class:`Owner`."""
        built = []
        for i, (u, v, owner, c, d) in enumerate(edges):
            built.append(Edge(i, u, v, Owner(owner), as_cost(c), as_cost(d)))
        return cls(directed, n, tuple(built), s, t)

    @cached_property
    def leader_edges(self) -> tuple:
        return tuple(e.id for e in self.edges if e.is_leader)

    @cached_property
    def follower_edges(self) -> tuple:
        return tuple(e.id for e in self.edges if not e.is_leader)

    @cached_property
    def all_edges(self) -> frozenset:
        return frozenset(range(len(self.edges)))

    @cached_property
    def adjacency(self) -> tuple:
        """Per vertex, ``(neighbor, edge id)`` pairs sorted by neighbor; out-arcs if directed."""
        adj = [[] for _ in range(self.n)]
        for e in self.edges:
            adj[e.u].append((e.v, e.id))
            if not self.directed:
                adj[e.v].append((e.u, e.id))
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def in_adjacency(self) -> tuple:
        adj = [[] for _ in range(self.n)]
        for e in self.edges:
            adj[e.v].append((e.u, e.id))
            if not self.directed:
                adj[e.u].append((e.v, e.id))
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def _edge_index(self) -> dict:
        return {_endpoint_key(self.directed, e.u, e.v): e.id for e in self.edges}

    def edge_between(self, u: int, v: int) -> Optional[int]:
        return self._edge_index.get(_endpoint_key(self.directed, u, v))

    def cost(self, edge_ids: Iterable[int], which: str = "c") -> Fraction:
        return sum((getattr(self.edges[i], which) for i in edge_ids), ZERO)

    def path_from_vertices(self, vertices) -> Path:
        vertices = tuple(vertices)
        ids = []
        for a, b in zip(vertices, vertices[1:]):
            i = self.edge_between(a, b)
            if i is None:
                raise ValueError(f"no edge from {a} to {b}")
            ids.append(i)
        return Path(vertices, tuple(ids))


LeaderChoice = frozenset


def leader_choice(instance: BilevelInstance, ids: Iterable[int] = ()) -> frozenset:
    """Validate and freeze a leader choice X."""
    X = frozenset(ids)
    for i in X:
        if not 0 <= i < len(instance.edges):
            raise ValueError(f"unknown edge id {i}")
        if not instance.edges[i].is_leader:
            raise ValueError(f"edge {i} is a follower edge and cannot be in X")
    return X


@dataclass(frozen=True)
class FollowerResponse:
    edges: frozenset
    path: Path


@dataclass(frozen=True)
class FollowerOutcome:
    status: Status
    value: Optional[LexValue] = None
    response: Optional[FollowerResponse] = None
    reason: Optional[str] = None

    @property
    def feasible(self) -> bool:
        return self.status is Status.OPTIMAL

    @classmethod
    def infeasible(cls, reason: str = "no feasible follower response") -> "FollowerOutcome":
        return cls(Status.INFEASIBLE, reason=reason)


@dataclass(frozen=True)
class SolveOutcome:
    status: Status
    leader_value: Optional[Fraction] = None
    follower_value: Optional[Fraction] = None
    X: Optional[frozenset] = None
    Y: Optional[FollowerResponse] = None
    info: dict = field(default_factory=dict, compare=False)

    @property
    def feasible(self) -> bool:
        return self.status is Status.OPTIMAL

    @classmethod
    def infeasible(cls, **info) -> "SolveOutcome":
        return cls(Status.INFEASIBLE, info=info)


# -- reachability and path enumeration ---------------------------------------


def _as_allowed(instance: BilevelInstance, allowed) -> frozenset:
    if allowed is None:
        return instance.all_edges
    return frozenset(allowed)


def reachable_from(instance: BilevelInstance, source: int, allowed=None, blocked=()) -> set:
    """Vertices reachable from ``source`` over ``allowed`` edges, never entering ``blocked``."""
    allowed = _as_allowed(instance, allowed)
    blocked = set(blocked)
    seen = {source}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y, i in instance.adjacency[x]:
            if i in allowed and y not in seen and y not in blocked:
                seen.add(y)
                queue.append(y)
    return seen


def has_st_path(instance: BilevelInstance, allowed=None) -> bool:
    return instance.t in reachable_from(instance, instance.s, allowed)


def enumerate_st_paths(
    instance: BilevelInstance, allowed=None, source: Optional[int] = None, target: Optional[int] = None
) -> Iterator[Path]:
    """Yield every simple source-target path in the allowed subgraph.

    Neighbors are expanded in ascending order and the search stops at the
    target, so paths come out in lexicographic order of their vertex sequence.
    """
    allowed = _as_allowed(instance, allowed)
    source = instance.s if source is None else source
    target = instance.t if target is None else target
    if source == target:
        yield Path((source,), ())
        return
    adjacency = instance.adjacency
    vertices = [source]
    edges: list = []
    on_path = [False] * instance.n
    on_path[source] = True
    stack = [iter(adjacency[source])]
    while stack:
        for y, i in stack[-1]:
            if i not in allowed or on_path[y]:
                continue
            if y == target:
                yield Path(tuple(vertices) + (y,), tuple(edges) + (i,))
                continue
            vertices.append(y)
            edges.append(i)
            on_path[y] = True
            stack.append(iter(adjacency[y]))
            break
        else:
            stack.pop()
            on_path[vertices.pop()] = False
            if edges:
                edges.pop()


# -- DAG utilities -------------------------------------------------------------


def topological_order(instance: BilevelInstance) -> list:
    """Smallest-id-first Kahn order; raises :class:`NotAcyclicError` on a cycle."""
    if not instance.directed:
        raise NotAcyclicError("topological order needs a directed instance")
    indeg = [0] * instance.n
    for e in instance.edges:
        indeg[e.v] += 1
    heap = [x for x in range(instance.n) if indeg[x] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        x = heapq.heappop(heap)
        order.append(x)
        for y, _ in instance.adjacency[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                heapq.heappush(heap, y)
    if len(order) != instance.n:
        raise NotAcyclicError("instance contains a directed cycle")
    return order


def is_acyclic(instance: BilevelInstance) -> bool:
    if not instance.directed:
        return False
    try:
        topological_order(instance)
    except NotAcyclicError:
        return False
    return True


def reachability_sets(instance: BilevelInstance) -> list:
    """For a DAG, ``reach[x]`` is the set of vertices reachable from ``x`` (x included)."""
    order = topological_order(instance)
    reach = [None] * instance.n
    for x in reversed(order):
        r = {x}
        for y, _ in instance.adjacency[x]:
            r |= reach[y]
        reach[x] = r
    return reach


def precedes(instance: BilevelInstance, reach: list, e: int, f: int) -> bool:
    """``e`` comes strictly before ``f`` on some directed path that may use any edge."""
    if e == f:
        return False
    return instance.edges[f].u in reach[instance.edges[e].v]


def chain_order(instance: BilevelInstance, X: Iterable[int]) -> Optional[list]:
    """Order ``X`` as a chain e1 < e2 < ... < ek, or return ``None`` if two edges are incomparable.

    Sorting by the topological position of each tail leaves only consecutive
    pairs to check: if a consecutive pair is not connected, it is incomparable.
    """
    order = topological_order(instance)
    pos = {x: i for i, x in enumerate(order)}
    ranked = sorted(X, key=lambda i: (pos[instance.edges[i].u], pos[instance.edges[i].v], i))
    if len(ranked) < 2:
        return ranked
    reach = reachability_sets(instance)
    for e, f in zip(ranked, ranked[1:]):
        if not precedes(instance, reach, e, f):
            return None
    return ranked


# -- lexicographic shortest path ----------------------------------------------


def lex_shortest_path(
    instance: BilevelInstance,
    allowed,
    weight: Callable[[Edge], LexValue],
    source: int,
    target: int,
) -> Optional[tuple]:
    """Dijkstra over :class:`LexValue` weights, ties broken by smallest vertex sequence.

    Returns ``(value, Path)`` or ``None`` when ``target`` is unreachable.
    Labels carry their full vertex sequence; with nonnegative weights the
    pair (value, sequence) is monotone under extension, so the first time a
    vertex is popped its label is optimal for both keys.
    """
    allowed = _as_allowed(instance, allowed)
    if source == target:
        return LEX_ZERO, Path((source,), ())
    settled = set()
    heap = [(LEX_ZERO, (source,), ())]
    while heap:
        value, seq, ids = heapq.heappop(heap)
        x = seq[-1]
        if x in settled:
            continue
        settled.add(x)
        if x == target:
            return value, Path(seq, ids)
        for y, i in instance.adjacency[x]:
            if i not in allowed or y in settled:
                continue
            w = weight(instance.edges[i])
            if w.primary < 0 or w.secondary < 0:
                raise ValueError("lex_shortest_path needs nonnegative weights")
            heapq.heappush(heap, (value + w, seq + (y,), ids + (i,)))
    return None


def follower_weight(edge: Edge) -> LexValue:
    """(d, c) on follower edges; leader edges are free for the follower."""
    if edge.is_leader:
        return LEX_ZERO
    return LexValue(edge.d, edge.c)


def response_value(instance: BilevelInstance, edge_ids: Iterable[int]) -> LexValue:
    """(d(Y), c(Y)) for the follower-owned part of an edge set."""
    ys = [i for i in edge_ids if not instance.edges[i].is_leader]
    return LexValue(instance.cost(ys, "d"), instance.cost(ys, "c"))
