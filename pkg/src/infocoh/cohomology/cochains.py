"""Cochains on an information structure and the two coboundary operators.

A degree-n cochain is evaluated at a generator ``gens = (X1, ..., Xn)`` and
an argument living on the localization ``X1...Xn`` (the common meet of the
generator). Joint locality is therefore built in: callers push their
argument down to the localization before asking for a value. The empty
generator localizes at the terminal, so a degree-0 cochain only ever sees
``(magnitude,)`` and is a function of the magnitude, as it must be.

Combinatorial cochains take counting functions (tuples of ints) and return
group values (``Fraction`` or :class:`~infocoh.values.Positive`).
Probabilistic cochains take exact laws (tuples of ``Fraction``) and return
floats.
"""

from __future__ import annotations

import hashlib
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import TableBoundExceeded, UnknownVariable
from ..fontene_ward import AdmissibleSequence, parse_sequence
from ..functionals import entropy, entropy_order, push_values, restrict_values, weight_power
from ..structure import InformationStructure
from ..values import Positive, from_json, to_json

ONE = Fraction(1)


# -- enumeration ------------------------------------------------------


def compositions(total: int, size: int):
    """Tuples of ``size`` nonnegative ints summing to ``total``, lexicographic."""
    if size == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, size - 1):
            yield (first,) + rest


def counting_functions(size: int, bound: int):
    """All counting functions on ``size`` outcomes with magnitude in ``1..bound``.

    Ordered by magnitude, then lexicographically.
    """
    for m in range(1, bound + 1):
        yield from compositions(m, size)


def law_grid(size: int, bound: int) -> list[tuple[Fraction, ...]]:
    """Laws whose weights share a denominator ``d <= bound``, sorted.

    The set is closed under pushforward and under conditioning.
    """
    seen = set()
    for d in range(1, bound + 1):
        for comp in compositions(d, size):
            seen.add(tuple(Fraction(a, d) for a in comp))
    return sorted(seen)


def law_denominator(weights) -> int:
    d = 1
    for w in weights:
        d = d * w.denominator // math.gcd(d, w.denominator)
    return d


def generators(s: InformationStructure, degree: int) -> list[tuple[str, ...]]:
    """Every ``degree``-tuple of variables that has a localization, sorted."""
    names = sorted(s.variables)
    out = []
    for gens in itertools.product(names, repeat=degree):
        if s.try_common_meet(gens) is not None:
            out.append(gens)
    return out


# -- combinatorial cochains --------------------------------------------


class CombCochain:
    """Base class: ``value(gens, counts)`` with ``counts`` on the localization."""

    degree: int
    additive = False

    def value(self, gens, counts):
        raise NotImplementedError

    def __call__(self, gens, counts):
        return self.value(tuple(gens), tuple(counts))

    def to_json(self) -> dict:
        raise NotImplementedError(f"{type(self).__name__} has no JSON form")


@dataclass(eq=False)
class One(CombCochain):
    """The constant cochain 1 (the unit of the group of cochains)."""

    degree: int = 1

    def value(self, gens, counts):
        return ONE

    def to_json(self):
        return {"type": "one", "degree": self.degree}


@dataclass(eq=False)
class FWCochain(CombCochain):
    """``W_D``: the Fontené-Ward coefficient of the counts, at every generator."""

    sequence: AdmissibleSequence
    degree: int = 1

    def value(self, gens, counts):
        return self.sequence.multinomial(counts)

    def to_json(self):
        return {"type": "fw", "degree": 1, "family": self.sequence.tag}


@dataclass(eq=False)
class ExpCochain(CombCochain):
    """Degree 0, ``nu -> exp(k * |nu|)``."""

    k: Fraction = Fraction(1)
    degree: int = 0

    def value(self, gens, counts):
        return Positive.exp(Fraction(self.k) * sum(counts))

    def to_json(self):
        return {"type": "exp", "degree": 0, "k": str(Fraction(self.k))}


@dataclass(eq=False)
class MagnitudeCochain(CombCochain):
    """Degree 0 given by a function ``Psi`` of the magnitude."""

    psi: object
    name: str = "Psi"
    degree: int = 0
    description: dict | None = None

    def value(self, gens, counts):
        return self.psi(sum(counts))

    def to_json(self):
        if self.description is None:
            return super().to_json()
        return dict(self.description)


def inverse_factorial(D: AdmissibleSequence) -> MagnitudeCochain:
    """``Psi(n) = 1 / [n]_D!``, whose coboundary is ``W_D``."""

    def psi(n):
        return 1 / D.factorial(n)

    description = {"type": "inverse-factorial", "degree": 0, "family": D.tag}
    return MagnitudeCochain(psi, name=f"1/[n]!({D.tag})", description=description)


@dataclass(eq=False)
class MagnitudeTable(CombCochain):
    """Degree 0 given by a table ``n -> Psi(n)`` for ``1 <= n <= len``."""

    values: dict
    degree: int = 0

    def value(self, gens, counts):
        n = sum(counts)
        try:
            return self.values[n]
        except KeyError:
            raise TableBoundExceeded(f"Psi({n}) is not tabulated") from None

    def to_json(self):
        return {
            "type": "magnitude",
            "degree": 0,
            "values": {str(n): to_json(v) for n, v in sorted(self.values.items())},
        }


@dataclass(eq=False)
class TableCochain(CombCochain):
    """Explicit values on ``(gens, counts)`` pairs, optionally over a base cochain.

    Lookups missing from the table fall through to ``base``; without a base
    they raise :class:`TableBoundExceeded`.
    """

    degree: int
    entries: dict = field(default_factory=dict)
    base: CombCochain | None = None

    def value(self, gens, counts):
        hit = self.entries.get((gens, counts))
        if hit is not None:
            return hit
        if self.base is not None:
            return self.base.value(gens, counts)
        raise TableBoundExceeded(f"no entry for {list(gens)} at {list(counts)}")

    def to_json(self):
        obj = {
            "type": "table",
            "degree": self.degree,
            "entries": [
                {"gens": list(g), "counts": list(c), "value": to_json(v)}
                for (g, c), v in sorted(self.entries.items())
            ],
        }
        if self.base is not None:
            obj["base"] = self.base.to_json()
        return obj


def perturb(base: CombCochain, gens, counts, factor) -> TableCochain:
    """``base`` with the single value at ``(gens, counts)`` multiplied by ``factor``."""
    gens, counts = tuple(gens), tuple(counts)
    return TableCochain(base.degree, {(gens, counts): base.value(gens, counts) * factor}, base)


@dataclass(eq=False)
class PowerCochain(CombCochain):
    """``psi ** r`` pointwise (the real vector space structure of the module)."""

    base: CombCochain
    r: object

    @property
    def degree(self):
        return self.base.degree

    def value(self, gens, counts):
        v = self.base.value(gens, counts)
        if isinstance(v, Positive):
            return v**self.r
        if isinstance(self.r, int) or (isinstance(self.r, Fraction) and self.r.denominator == 1):
            return Fraction(v) ** int(self.r)
        return Positive(Fraction(v)) ** self.r

    def to_json(self):
        return {"type": "power", "base": self.base.to_json(), "r": str(Fraction(self.r))}


@dataclass(eq=False)
class PerVariableCochain(CombCochain):
    """Degree-1 cochain given variable by variable.

    ``assignment[X]`` provides ``psi[X]``; variables not listed use ``default``.
    """

    assignment: dict
    default: CombCochain = field(default_factory=One)
    degree: int = 1

    def value(self, gens, counts):
        (x,) = gens
        return self.assignment.get(x, self.default).value(gens, counts)

    def to_json(self):
        obj = {"type": "per-variable", "degree": 1}
        obj["families"] = {x: c.to_json() for x, c in sorted(self.assignment.items())}
        obj["default"] = self.default.to_json()
        return obj


def componentwise(s: InformationStructure, by_component: dict) -> PerVariableCochain:
    """Degree-1 cochain using ``by_component[v]`` on the component containing ``v``."""
    comps = s.components()
    assignment = {}
    for rep, cochain in by_component.items():
        comp = next((c for c in comps if rep in c), None)
        if comp is None:
            raise UnknownVariable(f"{rep} is not a non-terminal variable")
        for x in comp:
            assignment[x] = cochain
    return PerVariableCochain(assignment)


class Coboundary(CombCochain):
    """``delta psi`` in multiplicative notation, memoized.

    ``delta psi [X1|...|X_{n+1}] = (X1.psi[X2|...]) * prod_k psi[...|XkX_{k+1}|...]^{(-1)^k}
    * psi[X1|...|Xn]^{(-1)^{n+1}}``.
    """

    def __init__(self, psi: CombCochain, s: InformationStructure, memo: bool = True):
        self.psi = psi
        self.s = s
        self.degree = psi.degree + 1
        self._plans: dict = {}
        self._memo: dict | None = {} if memo else None

    def _plan(self, gens):
        plan = self._plans.get(gens)
        if plan is None:
            plan = _plan(self.s, gens)
            self._plans[gens] = plan
        return plan

    def value(self, gens, counts):
        if self._memo is not None:
            key = (gens, counts)
            hit = self._memo.get(key)
            if hit is not None:
                return hit
        action, faces = self._plan(gens)
        psi = self.psi.value
        rest, to_x1, x1_size, to_rest, rest_size = action
        out = ONE
        for j in range(x1_size):
            part = restrict_values(counts, to_x1, j)
            if any(part):
                out = out * psi(rest, push_values(part, to_rest, rest_size))
        for face, imap, size, sign in faces:
            v = psi(face, push_values(counts, imap, size))
            out = out * v if sign > 0 else out / v
        if self._memo is not None:
            self._memo[key] = out
        return out


def _plan(s: InformationStructure, gens):
    """Index maps needed to evaluate a coboundary at ``gens``."""
    m = s.common_meet(gens)
    n = len(gens) - 1
    x1, rest = gens[0], gens[1:]
    m_rest = s.common_meet(rest)
    action = (rest, s.index_map(m, x1), s.size(x1), s.index_map(m, m_rest), s.size(m_rest))
    faces = []
    for k in range(1, n + 1):
        face = gens[: k - 1] + (s.meet(gens[k - 1], gens[k]),) + gens[k + 1 :]
        loc = s.common_meet(face)
        faces.append((face, s.index_map(m, loc), s.size(loc), (-1) ** k))
    face = gens[:-1]
    loc = s.common_meet(face)
    faces.append((face, s.index_map(m, loc), s.size(loc), (-1) ** (n + 1)))
    return action, faces


def coboundary_mult(psi: CombCochain, s: InformationStructure) -> Coboundary:
    return Coboundary(psi, s)


def _digest(*parts) -> int:
    h = hashlib.sha256(repr(parts).encode()).digest()
    return int.from_bytes(h[:8], "big")


def random_table(s: InformationStructure, degree: int, bound: int, seed: int) -> CombCochain:
    """A cochain with pseudo-random positive rational values on ``|nu| <= bound``.

    Degree 0 gives a :class:`MagnitudeTable`; higher degrees a
    :class:`TableCochain` over every generator.
    """
    import random

    rng = random.Random(seed)

    def draw():
        return Fraction(rng.randint(1, 9), rng.randint(1, 9))

    if degree == 0:
        return MagnitudeTable({n: draw() for n in range(1, bound + 1)})
    entries = {}
    for gens in generators(s, degree):
        size = s.size(s.common_meet(gens))
        for counts in counting_functions(size, bound):
            entries[(gens, counts)] = draw()
    return TableCochain(degree, entries)


# -- probabilistic cochains ---------------------------------------------


class ProbCochain:
    """Base class: ``value(gens, weights)`` with ``weights`` on the localization."""

    degree: int
    additive = True

    def value(self, gens, weights) -> float:
        raise NotImplementedError

    def __call__(self, gens, weights):
        return self.value(tuple(gens), tuple(weights))

    def to_json(self) -> dict:
        raise NotImplementedError(f"{type(self).__name__} has no JSON form")


@dataclass(eq=False)
class ConstCochain(ProbCochain):
    """Degree 0 constant; a 0-cochain of laws cannot depend on anything else."""

    c: float = 1.0
    degree: int = 0

    def value(self, gens, weights):
        return self.c

    def to_json(self):
        return {"type": "const", "degree": 0, "c": self.c}


@dataclass(eq=False)
class EntropyCochain(ProbCochain):
    """``Z -> S_beta(Z_* p)``."""

    beta: object = Fraction(1)
    degree: int = 1

    def __post_init__(self):
        self.beta = entropy_order(self.beta)

    def value(self, gens, weights):
        return entropy(self.beta, weights)

    def to_json(self):
        return {"type": "entropy", "degree": 1, "beta": str(self.beta)}


@dataclass(eq=False)
class ProbTable(ProbCochain):
    """Pseudo-random values on the law grid of common denominator ``<= bound``.

    Values are drawn from a hash of ``(seed, gens, weights)`` so the table is
    well defined without being stored.
    """

    degree: int
    bound: int
    seed: int = 0

    def value(self, gens, weights):
        if self.degree == 0:
            return (_digest(self.seed, "const") % 10**6) / 10**6
        if law_denominator(weights) > self.bound:
            raise TableBoundExceeded(f"{list(map(str, weights))} is off the grid of denominator {self.bound}")
        return (_digest(self.seed, gens, tuple(map(str, weights))) % 10**6) / 10**6


class AddCoboundary(ProbCochain):
    """Additive coboundary with the type-``alpha`` action, memoized.

    ``delta phi [X1|...|X_{n+1}] = X1.phi[X2|...] + sum_k (-1)^k phi[...|XkX_{k+1}|...]
    + (-1)^{n+1} phi[X1|...|Xn]``, where
    ``(Y.f)(p) = sum_y (Y_* p(y))^alpha f(p | Y = y)``.
    """

    def __init__(self, phi: ProbCochain, s: InformationStructure, alpha):
        self.phi = phi
        self.s = s
        self.alpha = entropy_order(alpha)
        self.degree = phi.degree + 1
        self._plans: dict = {}
        self._memo: dict = {}

    def value(self, gens, weights):
        key = (gens, weights)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        plan = self._plans.get(gens)
        if plan is None:
            plan = self._plans[gens] = _plan(self.s, gens)
        (rest, to_x1, x1_size, to_rest, rest_size), faces = plan
        phi = self.phi.value
        marginal = push_values(weights, to_x1, x1_size)
        terms = []
        for j, mass in enumerate(marginal):
            if mass:
                cond = tuple(w / mass for w in restrict_values(weights, to_x1, j))
                terms.append(weight_power(mass, self.alpha) * phi(rest, push_values(cond, to_rest, rest_size)))
        for face, imap, size, sign in faces:
            terms.append(sign * phi(face, push_values(weights, imap, size)))
        out = math.fsum(float(t) for t in terms)
        self._memo[key] = out
        return out


def coboundary_add(phi: ProbCochain, s: InformationStructure, alpha) -> AddCoboundary:
    return AddCoboundary(phi, s, alpha)


# -- JSON ----------------------------------------------------------------


def cochain_from_json(obj, s: InformationStructure | None = None) -> CombCochain | ProbCochain:
    """Read a cochain description (see README for the format).

    ``{"type": "coboundary", "of": ...}`` needs the structure ``s``.
    """
    if not isinstance(obj, dict) or "type" not in obj:
        raise ValueError("a cochain is a JSON object with a 'type' key")
    kind = obj["type"]
    if kind == "one":
        return One(int(obj.get("degree", 1)))
    if kind == "fw":
        return FWCochain(parse_sequence(obj["family"]))
    if kind == "exp":
        return ExpCochain(Fraction(obj.get("k", 1)))
    if kind == "inverse-factorial":
        return inverse_factorial(parse_sequence(obj["family"]))
    if kind == "magnitude":
        return MagnitudeTable({int(n): from_json(v) for n, v in obj["values"].items()})
    if kind == "table":
        base = cochain_from_json(obj["base"], s) if "base" in obj else None
        entries = {
            (tuple(e["gens"]), tuple(int(c) for c in e["counts"])): from_json(e["value"])
            for e in obj["entries"]
        }
        degree = int(obj.get("degree", base.degree if base else 1))
        return TableCochain(degree, entries, base)
    if kind == "per-variable":
        assignment = {x: _leaf(v) for x, v in obj["families"].items()}
        default = _leaf(obj["default"]) if "default" in obj else One()
        return PerVariableCochain(assignment, default)
    if kind == "power":
        return PowerCochain(cochain_from_json(obj["base"], s), Fraction(obj["r"]))
    if kind == "coboundary":
        if s is None:
            raise ValueError("coboundary cochains need a structure")
        inner = cochain_from_json(obj["of"], s)
        if inner.additive:
            return AddCoboundary(inner, s, obj.get("alpha", "1"))
        return Coboundary(inner, s)
    if kind == "const":
        return ConstCochain(float(obj.get("c", 1.0)))
    if kind == "entropy":
        return EntropyCochain(obj.get("beta", "1"))
    raise ValueError(f"unknown cochain type {kind!r}")


def _leaf(v):
    if isinstance(v, str):
        return FWCochain(parse_sequence(v))
    return cochain_from_json(v)
