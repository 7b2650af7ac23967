"""Propositional formulas in 3-DNF / 3-CNF and the "z equals the negation" transform."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, NamedTuple


class Literal(NamedTuple):
    var: str
    positive: bool = True

    def __neg__(self) -> "Literal":
        return Literal(self.var, not self.positive)

    def value(self, assignment: Mapping[str, bool]) -> bool:
        return bool(assignment[self.var]) == self.positive

    def __str__(self) -> str:
        return self.var if self.positive else f"~{self.var}"


def lit(token: str) -> Literal:
    """``'x1'`` or ``'~x1'``."""
    if token.startswith("~"):
        return Literal(token[1:], False)
    return Literal(token, True)


Assignment = Mapping[str, bool]


def _check_pools(x_vars, y_vars):
    if set(x_vars) & set(y_vars):
        raise ValueError("X and Y variable pools overlap")


@dataclass(frozen=True)
class DnfFormula:
    """Disjunction of conjunctions (each at most three literals) over variables X and Y."""

    terms: tuple
    x_vars: tuple
    y_vars: tuple = ()

    def __post_init__(self):
        terms = tuple(tuple(Literal(*l) for l in term) for term in self.terms)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "x_vars", tuple(self.x_vars))
        object.__setattr__(self, "y_vars", tuple(self.y_vars))
        _check_pools(self.x_vars, self.y_vars)
        pool = set(self.x_vars) | set(self.y_vars)
        for term in terms:
            if not 1 <= len(term) <= 3:
                raise ValueError(f"conjunction of width {len(term)} is not 3-DNF")
            for l in term:
                if l.var not in pool:
                    raise ValueError(f"variable {l.var!r} is in neither X nor Y")

    def evaluate(self, assignment: Assignment) -> bool:
        return any(all(l.value(assignment) for l in term) for term in self.terms)


@dataclass(frozen=True)
class CnfFormula:
    clauses: tuple
    x_vars: tuple = ()
    y_vars: tuple = ()
    aux_vars: tuple = ()
    z: str | None = None

    @property
    def variables(self) -> tuple:
        return self.x_vars + self.y_vars + self.aux_vars + ((self.z,) if self.z else ())

    def evaluate(self, assignment: Assignment) -> bool:
        return all(any(l.value(assignment) for l in clause) for clause in self.clauses)


def negate(phi: DnfFormula) -> CnfFormula:
    """De Morgan: each conjunction becomes a clause of negated literals."""
    clauses = tuple(tuple(-l for l in term) for term in phi.terms)
    return CnfFormula(clauses, phi.x_vars, phi.y_vars)


def cnf_equivalence_transform(phi: DnfFormula, prefix: str = "a", z: str = "z") -> CnfFormula:
    """3-CNF over X, Y, auxiliaries and ``z`` that is satisfiable exactly when z = not phi.

    With ``p1, p2, p3`` the literals of clause i of ``not phi`` (short clauses
    padded by repeating their last literal):

    * ``a_i <-> (p1 or p2 or p3)`` via ``a''_i`` in five clauses,
    * ``a'_1 <-> a_1`` and ``a'_i <-> (a_i and a'_{i-1})`` for i >= 2,
    * ``z <-> a'_k``.

    Auxiliary names are ``a1``, ``a'1``, ``a''1``, ... for the default prefix.
    """
    k = len(phi.terms)
    if k == 0:
        raise ValueError("the DNF needs at least one conjunction")
    a = [f"{prefix}{i}" for i in range(1, k + 1)]
    a1 = [f"{prefix}'{i}" for i in range(1, k + 1)]
    a2 = [f"{prefix}''{i}" for i in range(1, k + 1)]
    taken = set(phi.x_vars) | set(phi.y_vars)
    clash = taken & (set(a) | set(a1) | set(a2) | {z})
    if clash:
        raise ValueError(f"auxiliary names collide with formula variables: {sorted(clash)}")

    P, N = (lambda v: Literal(v, True)), (lambda v: Literal(v, False))
    clauses = []
    for i, clause in enumerate(negate(phi).clauses):
        p1, p2, p3 = (clause + (clause[-1],) * 3)[:3]
        clauses += [
            (N(a[i]), p1, P(a2[i])),
            (N(a2[i]), p2, p3),
            (-p1, P(a[i])),
            (-p2, P(a[i])),
            (-p3, P(a[i])),
        ]
    clauses += [(N(a1[0]), P(a[0])), (N(a[0]), P(a1[0]))]
    for i in range(1, k):
        clauses += [
            (N(a[i]), N(a1[i - 1]), P(a1[i])),
            (N(a1[i]), P(a[i])),
            (N(a1[i]), P(a1[i - 1])),
        ]
    clauses += [(P(z), N(a1[-1])), (N(z), P(a1[-1]))]
    aux = tuple(a + a1 + a2)
    return CnfFormula(tuple(clauses), phi.x_vars, phi.y_vars, aux, z)
