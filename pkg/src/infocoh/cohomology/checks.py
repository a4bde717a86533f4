"""Bounded cocycle checks with first-counterexample verdicts."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..structure import InformationStructure
from ..values import is_one, to_json
from .cochains import (
    AddCoboundary,
    Coboundary,
    CombCochain,
    ProbCochain,
    counting_functions,
    generators,
    law_grid,
)

PASS = "PASS"
FAIL = "FAIL"

ADDITIVE_TOL = 1e-12


@dataclass
class Verdict:
    status: str
    checked: int = 0
    witness: dict | None = None
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        obj = {"status": self.status, "checked": self.checked}
        if self.witness is not None:
            obj["witness"] = self.witness
        obj.update(self.extra)
        return obj


def _witness(s, gens, arg, value):
    loc = s.common_meet(gens)
    if isinstance(value, float):
        shown = value
    else:
        shown = to_json(value)
    return {
        "gens": list(gens),
        "variable": loc,
        "values": [a if isinstance(a, int) else str(a) for a in arg],
        "delta": shown,
    }


def cocycle_check(psi, s: InformationStructure, bound: int, alpha=None, tol: float = ADDITIVE_TOL) -> Verdict:
    """Exhaustively test ``delta psi == 1`` (or ``== 0`` for additive cochains).

    Combinatorial cochains are checked on every generator of degree
    ``psi.degree + 1`` and every counting function on its localization with
    magnitude ``<= bound``; exact values are compared exactly.
    Probabilistic cochains need ``alpha`` and are checked on the law grid of
    common denominator ``<= bound`` with absolute tolerance ``tol``.
    The first failure in (generator, magnitude, lexicographic) order is
    returned as the witness.
    """
    if psi.degree < 0:
        raise ValueError("cochains have nonnegative degree")
    if isinstance(psi, ProbCochain):
        if alpha is None:
            raise ValueError("probabilistic cochains need an entropy order alpha")
        return _check_additive(AddCoboundary(psi, s, alpha), s, bound, tol)
    return _check_mult(Coboundary(psi, s, memo=False), s, bound)


def _check_mult(delta: CombCochain, s, bound) -> Verdict:
    checked = 0
    for gens in generators(s, delta.degree):
        size = s.size(s.common_meet(gens))
        for counts in counting_functions(size, bound):
            v = delta.value(gens, counts)
            checked += 1
            if not is_one(v):
                return Verdict(FAIL, checked, _witness(s, gens, counts, v))
    return Verdict(PASS, checked)


def _check_additive(delta: ProbCochain, s, bound, tol) -> Verdict:
    checked = 0
    grids: dict[int, list] = {}
    for gens in generators(s, delta.degree):
        size = s.size(s.common_meet(gens))
        if size not in grids:
            grids[size] = law_grid(size, bound)
        for weights in grids[size]:
            v = delta.value(gens, weights)
            checked += 1
            if not math.isfinite(v) or abs(v) > tol:
                return Verdict(FAIL, checked, _witness(s, gens, weights, v))
    return Verdict(PASS, checked)


def coboundary_is_trivial(psi, s: InformationStructure, bound: int, alpha=None, tol: float = ADDITIVE_TOL) -> Verdict:
    """Check ``delta(delta psi)`` is trivial on the bounded domain."""
    if isinstance(psi, ProbCochain):
        return _check_additive(AddCoboundary(AddCoboundary(psi, s, alpha), s, alpha), s, bound, tol)
    return _check_mult(Coboundary(Coboundary(psi, s), s, memo=False), s, bound)


def single_support_check(psi: CombCochain, s: InformationStructure, bound: int) -> Verdict:
    """``psi[X](nu) == 1`` whenever ``nu`` is concentrated on one outcome.

    Covers the terminal too, where every counting function is concentrated.
    """
    if psi.degree != 1:
        raise ValueError("single-support values are a degree-1 statement")
    checked = 0
    for x in sorted(s.variables):
        size = s.size(x)
        for i in range(size):
            for n in range(1, bound + 1):
                counts = tuple(n if j == i else 0 for j in range(size))
                v = psi.value((x,), counts)
                checked += 1
                if not is_one(v):
                    return Verdict(FAIL, checked, _witness(s, (x,), counts, v))
    return Verdict(PASS, checked)
