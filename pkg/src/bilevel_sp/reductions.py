"""Gadget builders that turn classic problems (and BSP variants) into BSP instances.

Every builder returns the instance together with whatever is needed to read
the answer back: a threshold, an edge map, or a decoding helper.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

from .core import ZERO, BilevelInstance, Graph, Owner, Path, as_cost
from .formulas import CnfFormula, DnfFormula, Literal, cnf_equivalence_transform  # noqa: F401  (re-export)
from .kcycle import KCycleInstance, normalize_required_edges

L, F = Owner.LEADER, Owner.FOLLOWER


def _require_undirected(instance: BilevelInstance, what: str):
    if instance.directed:
        raise ValueError(f"{what} needs an undirected instance")


# -- undirected -> directed ----------------------------------------------------


def undirected_to_directed(instance: BilevelInstance):
    """Replace every edge {u, v} by a five-arc gadget through two new vertices.

    Arcs ``(u, w)``, ``(v, w)``, ``(w, w')``, ``(w', u)``, ``(w', v)``; only the
    middle arc ``(w, w')`` carries the edge's owner and costs, the other four
    are free follower arcs. Returns ``(directed instance, edge map)`` where the
    map sends each original edge id to the id of its middle arc.
    """
    _require_undirected(instance, "undirected_to_directed")
    n = instance.n
    edges = []
    edge_map = {}
    for e in instance.edges:
        w, w2 = n + 2 * e.id, n + 2 * e.id + 1
        edges += [(e.u, w, F, 0, 0), (e.v, w, F, 0, 0)]
        edge_map[e.id] = len(edges)
        edges += [(w, w2, e.owner, e.c, e.d), (w2, e.u, F, 0, 0), (w2, e.v, F, 0, 0)]
    directed = BilevelInstance.from_edges(n + 2 * len(instance.edges), edges, instance.s, instance.t, directed=True)
    return directed, edge_map


# -- vertex fixing -------------------------------------------------------------


@dataclass(frozen=True)
class VertexFixingResult:
    """Instance in which every cheap solution path must pass through the fixed vertices.

    ``splits[w] = (w1, w2, w3)``; ``w1`` reuses the id of ``w``. ``tau`` maps each
    inherited edge of the new instance to the original edge it copies.
    """

    instance: BilevelInstance
    M: int
    eps: object
    W: frozenset
    splits: dict
    tau: dict
    core: tuple  # the two-edge leader paths, flattened
    dangerous: frozenset
    sink_edge: int
    original: BilevelInstance = field(repr=False, default=None)

    @property
    def sink(self) -> int:
        return self.instance.t

    def contract(self, edge_ids: Iterable[int]) -> frozenset:
        """Original edges behind a set of new edges (core paths and the sink edge vanish)."""
        out = set()
        for i in edge_ids:
            if i in self.dangerous:
                raise ValueError(f"edge {i} is a dangerous edge and has no original counterpart")
            if i in self.tau:
                out.add(self.tau[i])
        return frozenset(out)

    def lift_path(self, vertices) -> Path:
        """Image of an original s-t vertex sequence: each fixed vertex becomes its 3-vertex path, then t to the new sink."""
        seq = []
        for x in vertices:
            seq.extend(self.splits.get(x, (x,)))
        seq.append(self.sink)
        return self.instance.path_from_vertices(seq)

    def lift_choice(self, vertices) -> frozenset:
        """Leader edges of the lifted path: the copies of the original leader edges plus every core edge."""
        path = self.lift_path(vertices)
        return frozenset(i for i in path.edges if self.instance.edges[i].is_leader)


def vertex_fixing(instance: BilevelInstance, W: Iterable[int], eps=1) -> VertexFixingResult:
    """Split each vertex of W into a leader-owned path and add dangerous edges toward a new sink.

    The leader then has to buy every split path to keep the follower off the
    dangerous edges (follower cost 0, leader cost M), which forces the
    follower's path through all of W. s and t are dropped from W.
    """
    _require_undirected(instance, "vertex_fixing")
    eps = as_cost(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    W = frozenset(W) - {instance.s, instance.t}
    for w in W:
        if not 0 <= w < instance.n:
            raise ValueError(f"vertex {w} outside 0..{instance.n - 1}")
    M = math.ceil(1 + sum((e.c for e in instance.edges), ZERO))

    n = instance.n
    splits = {}
    for w in sorted(W):
        splits[w] = (w, n, n + 1)
        n += 2
    sink = n
    n += 1

    def ends(x):
        return (x, splits[x][2]) if x in splits else (x,)

    edges = []
    tau = {}
    for e in instance.edges:
        for a in ends(e.u):
            for b in ends(e.v):
                tau[len(edges)] = e.id
                edges.append((a, b, e.owner, e.c, e.d))
    core = []
    for w in sorted(W):
        w1, w2, w3 = splits[w]
        core.append(len(edges))
        edges.append((w1, w2, L, 0, 0))
        core.append(len(edges))
        edges.append((w2, w3, L, 0, 0))
    dangerous = []
    for w in sorted(W):
        w2 = splits[w][1]
        dangerous.append(len(edges))
        edges.append((w2, instance.t, F, M, 0))
        dangerous.append(len(edges))
        edges.append((w2, sink, F, M, 0))
    sink_edge = len(edges)
    edges.append((instance.t, sink, F, 0, eps))

    fixed = BilevelInstance.from_edges(n, edges, instance.s, sink, directed=False)
    return VertexFixingResult(fixed, M, eps, W, splits, tau, tuple(core), frozenset(dangerous), sink_edge, instance)


# -- independent set (weak variant hardness) --------------------------------------


def independent_set_to_weak(G: Graph, k: int, orientation: str = "undirected"):
    """Chain gadget whose weak optimum is at most ``3n - k`` exactly when G has an independent set of size k.

    Vertex i of G becomes ``3i, 3i+1, 3i+2``: two leader edges of cost 1, a
    follower bypass (c=3, d=1), a connector to the next triple (c=0, d=1) and,
    for each edge of G, a shortcut between middle vertices (c=3n+1, d=0).
    ``orientation='dag'`` directs everything from lower to higher ids.
    Returns ``(instance, threshold)``.
    """
    if G.directed:
        raise ValueError("independent_set_to_weak needs an undirected graph")
    if orientation not in ("undirected", "dag"):
        raise ValueError("orientation is 'undirected' or 'dag'")
    n = G.n
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}")
    M = 3 * n + 1
    edges = []
    for i in range(n):
        a, b, c = 3 * i, 3 * i + 1, 3 * i + 2
        edges += [(a, b, L, 1, 0), (b, c, L, 1, 0), (a, c, F, 3, 1)]
        if i + 1 < n:
            edges.append((c, 3 * (i + 1), F, 0, 1))
    for u, v in G.edges:
        a, b = min(u, v), max(u, v)
        edges.append((3 * a + 1, 3 * b + 1, F, M, 0))
    instance = BilevelInstance.from_edges(3 * n, edges, 0, 3 * n - 1, directed=orientation == "dag")
    return instance, 3 * n - k


# -- Hamiltonian path (strong follower hardness) --------------------------------


class HamPathReduction(NamedTuple):
    instance: BilevelInstance
    X: frozenset
    threshold: object


def hampath_to_follower_strong(G: Graph, s: int, t: int, eps=1) -> HamPathReduction:
    """Follower instance whose optimum is at most eps exactly when G has a Hamiltonian s-t path.

    G is completed to a clique of follower edges (d=0 on edges of G, d=1 on
    the others, c=0 everywhere), then every vertex except s and t is fixed.
    The leader choice is the set of fixing paths.
    """
    if G.directed:
        raise ValueError("hampath_to_follower_strong needs an undirected graph")
    if G.n < 3:
        raise ValueError("the graph needs at least 3 vertices")
    if s == t or not (0 <= s < G.n and 0 <= t < G.n):
        raise ValueError("s and t must be distinct vertices")
    edges = [
        (a, b, F, 0, 0 if G.has_edge(a, b) else 1)
        for a in range(G.n)
        for b in range(a + 1, G.n)
    ]
    clique = BilevelInstance.from_edges(G.n, edges, s, t)
    fixed = vertex_fixing(clique, set(range(G.n)) - {s, t}, eps)
    return HamPathReduction(fixed.instance, frozenset(fixed.core), fixed.eps)


# -- vertex-disjoint paths (one leader edge) ------------------------------------


def vdp_to_strong_dir(G: Graph, s1: int, t1: int, s2: int, t2: int) -> BilevelInstance:
    """Directed instance with a single leader edge whose strong optimum is 0 exactly when
    vertex-disjoint s1-t1 and s2-t2 paths exist (and 1 otherwise).

    Arcs of G are free follower arcs with d=1; the follower arc (s1, t2) has
    c=1, d=0; the leader arc (t1, s2) is free.
    """
    if not G.directed:
        raise ValueError("vdp_to_strong_dir needs a directed graph")
    if len({s1, t1, s2, t2}) != 4:
        raise ValueError("s1, t1, s2, t2 must be four distinct vertices")
    for a, b in ((s1, t2), (t1, s2)):
        if G.has_edge(a, b):
            raise ValueError(f"arc ({a}, {b}) is already in G; subdivide it first")
    edges = [(u, v, F, 0, 1) for u, v in G.edges]
    edges += [(s1, t2, F, 1, 0), (t1, s2, L, 0, 0)]
    return BilevelInstance.from_edges(G.n, edges, s1, t2, directed=True)


# -- shortest k-cycle -> strong undirected ------------------------------------


@dataclass(frozen=True)
class KCycleReduction:
    instance: BilevelInstance
    threshold: Optional[object]
    M: int
    fixing: VertexFixingResult = field(repr=False)

    def decode(self, opt) -> Optional[object]:
        """Cycle weight from the strong optimum, or None when there is no cycle (infeasible or >= M)."""
        if opt is None or opt >= self.M:
            return None
        return opt


def kcycle_to_strong_undir(inst: KCycleInstance) -> KCycleReduction:
    """Strong undirected instance whose optimum is the lightest cycle through K (if below M).

    Required edges are subdivided first. The smallest required vertex v gets
    a twin v' with copies of its edges; s = v, t = v', all edges are follower
    edges with c = d = w, and the rest of K is fixed with eps = 1, leaving
    ``2|K| - 2`` leader edges.
    """
    inst = normalize_required_edges(inst)
    if len(inst.required) < 3:
        raise ValueError("the reduction needs at least 3 required vertices")
    v = min(inst.required)
    twin = inst.n
    edges = [(a, b, F, w, w) for a, b, w in inst.edges]
    edges += [(twin, b if a == v else a, F, w, w) for a, b, w in inst.edges if v in (a, b)]
    base = BilevelInstance.from_edges(inst.n + 1, edges, v, twin)
    fixed = vertex_fixing(base, inst.required - {v}, eps=1)
    return KCycleReduction(fixed.instance, inst.threshold, fixed.M, fixed)


# -- Min-Max-Ham -------------------------------------------------------------


@dataclass(frozen=True)
class MinMaxHamInstance:
    """Is there B' within B such that some Hamiltonian s-t path H has H ∩ B = B',
    and no Hamiltonian s-t path with H ∩ B = B' uses the edge ``e_tilde``?

    ``e_tilde`` and the members of ``B`` are edge indices into ``graph.edges``;
    ``v`` has degree 3 and ``e_tilde`` is one of its edges; B avoids v.
    """

    graph: Graph
    s: int
    t: int
    v: int
    e_tilde: int
    B: frozenset

    def __post_init__(self):
        object.__setattr__(self, "B", frozenset(self.B))
        g = self.graph
        if g.directed:
            raise ValueError("Min-Max-Ham uses an undirected graph")
        for x, name in ((self.s, "s"), (self.t, "t"), (self.v, "v")):
            if not 0 <= x < g.n:
                raise ValueError(f"{name}={x} outside 0..{g.n - 1}")
        if self.s == self.t:
            raise ValueError("s and t must differ")
        if g.degree(self.v) != 3:
            raise ValueError(f"v={self.v} must have degree 3, has {g.degree(self.v)}")
        incident = self.incident_to_v
        if self.e_tilde not in incident:
            raise ValueError("e_tilde must be incident to v")
        for i in self.B:
            if not 0 <= i < len(g.edges):
                raise ValueError(f"B contains unknown edge {i}")
        if self.B & incident:
            raise ValueError("B must not contain edges incident to v")

    @property
    def incident_to_v(self) -> frozenset:
        return frozenset(i for i, (a, b) in enumerate(self.graph.edges) if self.v in (a, b))


def minmaxham_to_strong_undir(mmh: MinMaxHamInstance) -> BilevelInstance:
    """Strong undirected instance with optimum 0 exactly on yes-instances (at least 1 otherwise).

    Leader edges are B. Among the edges at v, ``e_tilde`` costs the leader 1 and
    the follower 0 while the other two cost the follower 1; everything else is
    free. Finally every vertex is fixed.
    """
    incident = mmh.incident_to_v
    edges = []
    for i, (a, b) in enumerate(mmh.graph.edges):
        owner = L if i in mmh.B else F
        if i == mmh.e_tilde:
            c, d = 1, 0
        elif i in incident:
            c, d = 0, 1
        else:
            c, d = 0, 0
        edges.append((a, b, owner, c, d))
    base = BilevelInstance.from_edges(mmh.graph.n, edges, mmh.s, mmh.t)
    return vertex_fixing(base, range(mmh.graph.n), eps=1).instance
