"""The combinatorial fundamental equation and its continuous ancestors.

Discrete form, for unknown ``f1, f2`` on ``N^2 minus (0,0)``::

    f1(n0 + n2, n1) * f2(n0, n2) == f2(n0 + n1, n2) * f1(n0, n1)

with boundary values ``f(n, 0) = f(0, n) = 1``. The solutions are the
Fontené-Ward binomials of an admissible sequence, read off as
``D_{n+1} = f(n, 1)``.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..errors import BoundaryViolation, DomainViolation, FunctionalEquationViolation, SymmetryViolation
from ..fontene_ward import AdmissibleSequence, explicit, explicit_log
from ..values import ln, same, to_json


def binomial_tables(D: AdmissibleSequence, N: int) -> dict[tuple[int, int], object]:
    """``(n1, n2) -> C(n1 + n2; n1, n2)_D`` on ``0 < n1 + n2 <= N``."""
    return {(a, n - a): D.multinomial((a, n - a)) for n in range(1, N + 1) for a in range(n + 1)}


def _table_size(table) -> int:
    return max(a + b for a, b in table)


def _show(v):
    return v if isinstance(v, float) else to_json(v)


def comb_feith_solve(f1: dict, f2: dict) -> AdmissibleSequence:
    """Solve the discrete equation on the tabulated domain ``n1 + n2 <= N``.

    Returns the admissible prefix ``D_1..D_N``. Raises
    :class:`BoundaryViolation`, :class:`SymmetryViolation` or
    :class:`FunctionalEquationViolation` (witness ``(n0, n1, n2)``, the first
    failing triple in lexicographic order).
    """
    N = _table_size(f1)
    if _table_size(f2) != N:
        raise ValueError("f1 and f2 must cover the same domain")
    for name, f in (("f1", f1), ("f2", f2)):
        missing = [(a, n - a) for n in range(1, N + 1) for a in range(n + 1) if (a, n - a) not in f]
        if missing:
            raise ValueError(f"{name} lacks entries {missing[:3]}")
        for n in range(1, N + 1):
            for key in ((n, 0), (0, n)):
                if not same(f[key], Fraction(1)):
                    raise BoundaryViolation(
                        f"{name}{key} = {f[key]}, expected 1",
                        {"table": name, "args": list(key), "value": _show(f[key])},
                    )

    def residual_fails(n0, n1, n2):
        lhs, rhs = _sides(f1, f2, n0, n1, n2)
        return not same(lhs, rhs)

    def first_failure(triples):
        for t in triples:
            if sum(t) and residual_fails(*t):
                return t
        return None

    # n0 = 0: f1(n2, n1) == f2(n1, n2)
    bad = first_failure((0, n1, n - n1) for n in range(1, N + 1) for n1 in range(n + 1))
    if bad is not None:
        _violation(bad, f1, f2)

    f = f1
    for n in range(1, N):
        if not same(f[(n, 1)], f[(1, n)]):
            raise SymmetryViolation(
                f"f({n},1) = {f[(n, 1)]} but f(1,{n}) = {f[(1, n)]}",
                {"args": [n, 1], "values": [_show(f[(n, 1)]), _show(f[(1, n)])]},
            )
    terms = [Fraction(1)] + [f[(n, 1)] for n in range(1, N)]
    if all(isinstance(t, (int, Fraction)) for t in terms):
        D = explicit(terms)
    else:
        D = explicit_log([0.0] + [ln(t) for t in terms[1:]])

    for key in sorted(f1):
        if not (same(f1[key], D.multinomial(key)) and same(f2[key], D.multinomial(key))):
            triples = (
                (n0, n1, n2)
                for n0 in range(N + 1)
                for n1 in range(N + 1 - n0)
                for n2 in range(N + 1 - n0 - n1)
            )
            bad = first_failure(triples)
            if bad is not None:
                _violation(bad, f1, f2)
            raise FunctionalEquationViolation(f"table entry {key} disagrees with the reconstruction", None)
    return D


def _at(f, key):
    # f(0, 0) never appears in the statement; 1 makes the boundary rows uniform
    return f[key] if key != (0, 0) else Fraction(1)


def _sides(f1, f2, n0, n1, n2):
    lhs = _at(f1, (n0 + n2, n1)) * _at(f2, (n0, n2))
    rhs = _at(f2, (n0 + n1, n2)) * _at(f1, (n0, n1))
    return lhs, rhs


def _violation(t, f1, f2):
    lhs, rhs = _sides(f1, f2, *t)
    raise FunctionalEquationViolation(
        f"equation fails at (n0, n1, n2) = {t}: {lhs} != {rhs}",
        {"triple": list(t), "lhs": _show(lhs), "rhs": _show(rhs)},
    )


def tables_to_json(f1: dict, f2: dict | None = None):
    def rows(f):
        return [{"parts": [a, b], "value": to_json(v)} for (a, b), v in sorted(f.items())]

    if f2 is None:
        return rows(f1)
    return {"f1": rows(f1), "f2": rows(f2)}


def tables_from_json(obj):
    """``[{parts, value}, ...]`` (used for both unknowns) or ``{"f1": ..., "f2": ...}``."""
    from ..values import from_json

    def read(rows):
        return {(int(r["parts"][0]), int(r["parts"][1])): from_json(r["value"]) for r in rows}

    if isinstance(obj, list):
        f = read(obj)
        return f, f
    if isinstance(obj, dict) and set(obj) == {"f1", "f2"}:
        return read(obj["f1"]), read(obj["f2"])
    raise ValueError("a FEITH table is a list of {parts, value} or an object {f1, f2}")


# -- continuous equation -------------------------------------------------


def s_alpha(alpha):
    """The binary entropy ``s_alpha(x) = S_alpha(x, 1 - x)`` as a float function."""
    a = float(alpha)
    if a == 1.0:

        def s1(x):
            x = float(x)
            return -sum(t * math.log(t) for t in (x, 1.0 - x) if t > 0)

        return s1

    def sa(x):
        x = float(x)
        return (x**a + (1.0 - x) ** a - 1.0) / (1.0 - a)

    return sa


def admissible_grid(count: int = 100) -> list[tuple[Fraction, Fraction]]:
    """``count`` rational points ``(x, y)`` with ``x, y in [0, 1)`` and ``x + y <= 1``.

    ``x = i/m``, ``y = (j/m)(1 - x)`` for ``0 <= i, j < m`` where ``m*m >= count``;
    the first ``count`` points in that order are kept.
    """
    m = math.isqrt(count - 1) + 1 if count > 0 else 0
    points = []
    for i in range(m):
        x = Fraction(i, m)
        for j in range(m):
            points.append((x, Fraction(j, m) * (1 - x)))
    return points[:count]


def feith_residual_continuous(u, alpha, grid) -> float:
    """Max over the grid of ``|u(x) + (1-x)^a u(y/(1-x)) - u(y) - (1-y)^a u(x/(1-y))|``."""
    a = float(alpha)
    worst = 0.0
    for x, y in grid:
        if not (0 <= x < 1 and 0 <= y < 1 and x + y <= 1):
            raise DomainViolation(f"({x}, {y}) is outside the domain x, y in [0,1), x + y <= 1")
        x, y = Fraction(x), Fraction(y)
        lhs = float(u(x)) + float(1 - x) ** a * float(u(y / (1 - x)))
        rhs = float(u(y)) + float(1 - y) ** a * float(u(x / (1 - y)))
        worst = max(worst, abs(lhs - rhs))
    return worst
