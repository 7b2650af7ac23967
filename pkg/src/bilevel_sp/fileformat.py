"""Line-oriented text formats for instances, k-cycle instances and plain graphs.

Instance file::

    bsp undirected          # or: bsp directed
    vertices 3
    s 0
    t 2
    edge 0 1 L 0 0          # edge <u> <v> <L|F> <c> <d>
    edge 0 2 F 5 0

Costs are ``<int>`` or ``<int>/<int>``; ``#`` starts a comment. Edge ids follow
file order starting at 0.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .core import BilevelInstance, Graph, as_cost, format_cost

_COST = re.compile(r"^\d+(/\d+)?$")


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _records(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield lineno, body.split()


def _int(token: str, lineno: int, what: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise FormatError(f"{what} must be an integer, got {token!r}", lineno) from None
    if value < 0:
        raise FormatError(f"{what} must be nonnegative, got {value}", lineno)
    return value


def _cost(token: str, lineno: int) -> Fraction:
    if token.startswith("-"):
        raise FormatError(f"negative cost {token!r}", lineno)
    if not _COST.match(token):
        raise FormatError(f"cost must be <int> or <int>/<int>, got {token!r}", lineno)
    try:
        return as_cost(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(str(exc), lineno) from None


def _header(records, keyword: str, expected_args: int):
    try:
        lineno, toks = next(records)
    except StopIteration:
        raise FormatError(f"missing '{keyword}' line") from None
    if toks[0] != keyword or len(toks) != expected_args + 1:
        raise FormatError(f"expected '{keyword}' with {expected_args} argument(s), got {' '.join(toks)!r}", lineno)
    return lineno, toks[1:]


def parse_instance(text: str) -> BilevelInstance:
    records = _records(text)
    lineno, (kind,) = _header(records, "bsp", 1)
    if kind not in ("directed", "undirected"):
        raise FormatError(f"expected 'bsp directed' or 'bsp undirected', got 'bsp {kind}'", lineno)
    directed = kind == "directed"
    lineno, (tok,) = _header(records, "vertices", 1)
    n = _int(tok, lineno, "vertex count")
    lineno, (tok,) = _header(records, "s", 1)
    s = _int(tok, lineno, "s")
    lineno, (tok,) = _header(records, "t", 1)
    t = _int(tok, lineno, "t")
    for x, name in ((s, "s"), (t, "t")):
        if x >= n:
            raise FormatError(f"{name}={x} outside 0..{n - 1}", lineno)
    if s == t:
        raise FormatError("s and t must differ", lineno)

    edges = []
    seen = {}
    for lineno, toks in records:
        if toks[0] != "edge":
            raise FormatError(f"unknown record {toks[0]!r}", lineno)
        if len(toks) != 6:
            raise FormatError("edge record is 'edge <u> <v> <L|F> <c> <d>'", lineno)
        u = _int(toks[1], lineno, "endpoint")
        v = _int(toks[2], lineno, "endpoint")
        if u >= n or v >= n:
            raise FormatError(f"endpoint outside 0..{n - 1}", lineno)
        if u == v:
            raise FormatError(f"self-loop at vertex {u}", lineno)
        if toks[3] not in ("L", "F"):
            raise FormatError(f"owner must be L or F, got {toks[3]!r}", lineno)
        key = (u, v) if directed else (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(f"parallel edge: same endpoints as line {seen[key]}", lineno)
        seen[key] = lineno
        edges.append((u, v, toks[3], _cost(toks[4], lineno), _cost(toks[5], lineno)))
    return BilevelInstance.from_edges(n, edges, s, t, directed=directed)


def format_instance(instance: BilevelInstance, comments=()) -> str:
    lines = [f"# {c}" for c in comments]
    lines += [
        f"bsp {'directed' if instance.directed else 'undirected'}",
        f"vertices {instance.n}",
        f"s {instance.s}",
        f"t {instance.t}",
    ]
    for e in instance.edges:
        lines.append(f"edge {e.u} {e.v} {e.owner.value} {format_cost(e.c)} {format_cost(e.d)}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """``graph directed|undirected``, ``vertices <n>``, then ``edge <u> <v>`` lines."""
    records = _records(text)
    lineno, (kind,) = _header(records, "graph", 1)
    if kind not in ("directed", "undirected"):
        raise FormatError(f"expected 'graph directed' or 'graph undirected', got 'graph {kind}'", lineno)
    lineno, (tok,) = _header(records, "vertices", 1)
    n = _int(tok, lineno, "vertex count")
    edges = []
    for lineno, toks in records:
        if toks[0] != "edge" or len(toks) != 3:
            raise FormatError("graph edge record is 'edge <u> <v>'", lineno)
        edges.append((_int(toks[1], lineno, "endpoint"), _int(toks[2], lineno, "endpoint")))
    try:
        return Graph(n, tuple(edges), directed=kind == "directed")
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_graph(graph: Graph) -> str:
    lines = [f"graph {'directed' if graph.directed else 'undirected'}", f"vertices {graph.n}"]
    lines += [f"edge {u} {v}" for u, v in graph.edges]
    return "\n".join(lines) + "\n"


def parse_kcycle(text: str):
    """``kcycle``, ``vertices <n>``, ``required <id> ...``, ``edge <u> <v> <w>``, optional ``threshold <T>``."""
    from .kcycle import KCycleInstance

    records = _records(text)
    lineno, _ = _header(records, "kcycle", 0)
    lineno, (tok,) = _header(records, "vertices", 1)
    n = _int(tok, lineno, "vertex count")
    required: list = []
    edges = []
    threshold = None
    for lineno, toks in records:
        head = toks[0]
        if head == "required":
            required.extend(_int(x, lineno, "required vertex") for x in toks[1:])
        elif head == "edge":
            if len(toks) != 4:
                raise FormatError("k-cycle edge record is 'edge <u> <v> <w>'", lineno)
            edges.append((_int(toks[1], lineno, "endpoint"), _int(toks[2], lineno, "endpoint"), _cost(toks[3], lineno)))
        elif head == "threshold":
            if len(toks) != 2:
                raise FormatError("threshold record is 'threshold <T>'", lineno)
            threshold = _cost(toks[1], lineno)
        else:
            raise FormatError(f"unknown record {head!r}", lineno)
    try:
        return KCycleInstance(n, tuple(edges), frozenset(required), threshold=threshold)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_kcycle(inst) -> str:
    lines = ["kcycle", f"vertices {inst.n}"]
    if inst.required:
        lines.append("required " + " ".join(str(x) for x in sorted(inst.required)))
    lines += [f"edge {u} {v} {format_cost(w)}" for u, v, w in inst.edges]
    if inst.threshold is not None:
        lines.append(f"threshold {format_cost(inst.threshold)}")
    return "\n".join(lines) + "\n"
