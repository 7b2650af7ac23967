"""Command-line front end: ``bsp solve|follower|reduce|gen|verify``.

Exit codes: 0 success, 1 infeasible under ``--expect-feasible``, 2 usage or
parse error, 3 failing property suite.
"""

from __future__ import annotations

import argparse
import os
import sys

from .core import BilevelInstance, Graph, NotAcyclicError, format_cost, is_acyclic
from .fileformat import FormatError, format_instance, parse_graph, parse_instance, parse_kcycle
from .follower import solve_follower_strong_dag, solve_follower_strong_exact, solve_follower_weak
from .leader import (
    solve_leader_strong_dag,
    solve_leader_strong_exact,
    solve_leader_strong_undir_via_kcycle,
    solve_leader_weak_enum,
)
from .oracle import brute_force_bilevel, random_instance
from .reductions import (
    MinMaxHamInstance,
    hampath_to_follower_strong,
    independent_set_to_weak,
    kcycle_to_strong_undir,
    minmaxham_to_strong_undir,
    undirected_to_directed,
    vdp_to_strong_dir,
)
from .suites import SUITES

KCYCLE_MAX_LEADER_EDGES = 15


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _ids(values) -> str:
    return " ".join(str(i) for i in sorted(values))


def _ints(text: str) -> list:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"expected edge ids, got {text!r}") from None


def pick_method(instance: BilevelInstance, variant: str, method: str) -> str:
    if method != "auto":
        return method
    if variant == "weak":
        return "enum"
    if instance.directed and is_acyclic(instance):
        return "dag"
    if not instance.directed and len(instance.leader_edges) <= KCYCLE_MAX_LEADER_EDGES:
        return "kcycle"
    return "brute"


def solve(instance: BilevelInstance, variant: str, method: str = "auto"):
    method = pick_method(instance, variant, method)
    if method == "brute":
        return brute_force_bilevel(instance, variant)
    if method == "enum":
        return solve_leader_weak_enum(instance) if variant == "weak" else solve_leader_strong_exact(instance)
    if variant == "weak":
        raise UsageError(f"method {method!r} solves the strong variant only")
    if method == "dag":
        if not instance.directed:
            raise UsageError("method 'dag' needs a directed acyclic instance")
        return solve_leader_strong_dag(instance)
    if method == "kcycle":
        if instance.directed:
            raise UsageError("method 'kcycle' needs an undirected instance")
        return solve_leader_strong_undir_via_kcycle(instance)
    raise UsageError(f"unknown method {method!r}")


def _print_outcome(out, lines) -> None:
    if not out.feasible:
        lines.append("status infeasible")
        return
    lines += [
        "status optimal",
        f"leader_value {format_cost(out.leader_value)}",
        f"follower_value {format_cost(out.follower_value)}",
        f"X={_ids(out.X)}",
        f"Y={_ids(out.Y.edges)}",
        f"path={' '.join(str(x) for x in out.Y.path.vertices)}",
    ]


def cmd_solve(args, lines) -> int:
    instance = parse_instance(_read(args.file))
    out = solve(instance, args.variant, args.method)
    _print_outcome(out, lines)
    return 1 if args.expect_feasible and not out.feasible else 0


def cmd_follower(args, lines) -> int:
    instance = parse_instance(_read(args.file))
    X = _ints(args.X)
    if args.variant == "weak":
        out = solve_follower_weak(instance, X)
    elif instance.directed and is_acyclic(instance):
        out = solve_follower_strong_dag(instance, X)
    else:
        out = solve_follower_strong_exact(instance, X)
    if not out.feasible:
        lines += ["status infeasible", f"reason {out.reason}"]
        return 1 if args.expect_feasible else 0
    leader_value = instance.cost(set(X)) + out.value.secondary
    lines += [
        "status optimal",
        f"follower_value {format_cost(out.value.primary)}",
        f"leader_value {format_cost(leader_value)}",
        f"X={_ids(set(X))}",
        f"Y={_ids(out.response.edges)}",
        f"path={' '.join(str(x) for x in out.response.path.vertices)}",
    ]
    return 0


def cmd_reduce(args, lines) -> int:
    source = args.source
    comments = []
    if source == "undirected":
        instance, edge_map = undirected_to_directed(parse_instance(_read(args.file)))
        comments.append("certificate: OPT_s,OPT_w== original")
        comments.append("edge-map " + " ".join(f"{a}:{b}" for a, b in sorted(edge_map.items())))
    elif source == "is":
        instance, T = independent_set_to_weak(_graph(args), _need(args.k, "--k"), args.orientation)
        comments.append(f"certificate: OPT_w<= {T}")
    elif source == "hampath":
        red = hampath_to_follower_strong(_graph(args), _need(args.s, "--s"), _need(args.t, "--t"), args.eps)
        instance = red.instance
        comments.append(f"certificate: follower_value<= {format_cost(red.threshold)}")
        comments.append(f"leader-choice {_ids(red.X)}")
    elif source == "vdp":
        terminals = [_need(getattr(args, name), "--" + name) for name in ("s1", "t1", "s2", "t2")]
        instance = vdp_to_strong_dir(_graph(args), *terminals)
        comments.append("certificate: OPT_s== 0")
    elif source == "kcycle":
        red = kcycle_to_strong_undir(parse_kcycle(_read(args.file)))
        instance = red.instance
        comments.append(f"certificate: OPT_s< {red.M}")
        if red.threshold is not None:
            comments.append(f"cycle-threshold {format_cost(red.threshold)}")
    elif source == "minmaxham":
        mmh = MinMaxHamInstance(
            _graph(args),
            _need(args.s, "--s"),
            _need(args.t, "--t"),
            _need(args.v, "--v"),
            _need(args.e_tilde, "--e-tilde"),
            frozenset(_ints(args.B or "")),
        )
        instance = minmaxham_to_strong_undir(mmh)
        comments.append("certificate: OPT_s== 0")
    else:  # pragma: no cover - argparse restricts the choices
        raise UsageError(f"unknown source {source!r}")
    lines.append(format_instance(instance, comments).rstrip("\n"))
    return 0


def _graph(args) -> Graph:
    return parse_graph(_read(args.file))


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required for this reduction")
    return value


def _default_seed() -> int:
    raw = os.environ.get("BSP_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"BSP_SEED must be an integer, got {raw!r}") from None


def cmd_gen(args, lines) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    instance = random_instance(
        n=args.n,
        p=args.p,
        leader_fraction=args.leader_fraction,
        max_cost=args.max_cost,
        directed=args.directed,
        dag=args.dag,
        seed=seed,
        max_leader_edges=args.max_leader_edges,
    )
    lines.append(format_instance(instance).rstrip("\n"))
    return 0


def cmd_verify(args, lines) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    report = SUITES[args.suite](seed, args.count)
    lines.append(f"suite {report.name} seed {seed} passed {report.passed} failed {report.failed}")
    for case in report.failures:
        lines.append(f"failing-case {case}")
    return 0 if report.ok else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bsp", description="Exact bilevel shortest path toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve the leader's problem")
    p.add_argument("--variant", choices=("weak", "strong"), required=True)
    p.add_argument("--method", choices=("auto", "enum", "dag", "kcycle", "brute"), default="auto")
    p.add_argument("--expect-feasible", action="store_true")
    p.add_argument("file")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("follower", help="solve the follower's problem for a fixed X")
    p.add_argument("--variant", choices=("weak", "strong"), required=True)
    p.add_argument("--X", default="", help="leader edge ids, comma or space separated")
    p.add_argument("--expect-feasible", action="store_true")
    p.add_argument("file")
    p.set_defaults(func=cmd_follower)

    p = sub.add_parser("reduce", help="build a gadget instance")
    p.add_argument("--from", dest="source", choices=("undirected", "is", "hampath", "vdp", "kcycle", "minmaxham"), required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--orientation", choices=("undirected", "dag"), default="undirected")
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--eps", default="1")
    for name in ("s1", "t1", "s2", "t2", "v"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--e-tilde", type=int, help="edge index (graph file order)")
    p.add_argument("--B", help="edge indices (graph file order)")
    p.add_argument("file")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gen", help="print a random instance")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--leader-fraction", type=float, default=0.3)
    p.add_argument("--max-cost", type=int, default=5)
    p.add_argument("--directed", action="store_true")
    p.add_argument("--dag", action="store_true")
    p.add_argument("--max-leader-edges", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="run a seeded property suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int, default=100)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    lines: list = []
    try:
        code = args.func(args, lines)
    except (UsageError, FormatError, NotAcyclicError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 2
    for line in lines:
        print(line, file=out)
    return code


def main() -> None:
    sys.exit(run())
