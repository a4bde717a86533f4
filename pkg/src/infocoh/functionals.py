"""Counting functions, probability laws, and the two module actions.

Counting functions and laws are tuples aligned with the outcome order of
their variable. Pushforwards sum over fibers; restrictions and conditionings
zero out everything outside one fiber. Probabilities are exact fractions;
entropies are returned as floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import (
    MissingProduct,
    NoProduct,
    NotCoarser,
    UnknownOutcome,
    VariableMismatch,
    ZeroConditioningMass,
)
from .structure import InformationStructure


@dataclass(frozen=True)
class CountingFunction:
    variable: str
    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if any(c < 0 for c in counts):
            raise ValueError("counts are nonnegative")
        if sum(counts) <= 0:
            raise ValueError("a counting function has positive magnitude")
        object.__setattr__(self, "counts", counts)

    @property
    def magnitude(self) -> int:
        return sum(self.counts)

    def support(self, s: InformationStructure) -> frozenset[str]:
        labels = s.outcomes(self.variable)
        return frozenset(labels[i] for i, c in enumerate(self.counts) if c)

    def as_dict(self, s: InformationStructure) -> dict[str, int]:
        return dict(zip(s.outcomes(self.variable), self.counts))

    def to_json(self) -> dict:
        return {"variable": self.variable, "values": list(self.counts)}


@dataclass(frozen=True)
class ProbabilityLaw:
    variable: str
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        weights = tuple(Fraction(w) for w in self.weights)
        if any(w < 0 for w in weights):
            raise ValueError("probabilities are nonnegative")
        if sum(weights) != 1:
            raise ValueError(f"weights sum to {sum(weights)}, not 1")
        object.__setattr__(self, "weights", weights)

    def to_json(self) -> dict:
        return {"variable": self.variable, "values": [str(w) for w in self.weights]}


def counting(s: InformationStructure, x: str, values) -> CountingFunction:
    """Build a counting function from a label mapping or an aligned sequence."""
    return CountingFunction(x, _aligned(s, x, values, int))


def law(s: InformationStructure, x: str, values) -> ProbabilityLaw:
    return ProbabilityLaw(x, _aligned(s, x, values, Fraction))


def _aligned(s, x, values, kind):
    labels = s.outcomes(x)
    if isinstance(values, dict):
        unknown = set(values) - set(labels)
        if unknown:
            raise UnknownOutcome(f"{sorted(unknown)} are not outcomes of {x}")
        return tuple(kind(values.get(label, 0)) for label in labels)
    values = tuple(kind(v) for v in values)
    if len(values) != len(labels):
        raise VariableMismatch(f"{x} has {len(labels)} outcomes, got {len(values)} values")
    return values


def counts_from_json(s: InformationStructure, obj) -> CountingFunction:
    return counting(s, obj["variable"], obj["values"])


def law_from_json(s: InformationStructure, obj) -> ProbabilityLaw:
    return law(s, obj["variable"], obj["values"])


# -- tuple-level helpers (hot paths in the cohomology code) ------------


def push_values(values, index_map, size):
    out = [0] * size
    for v, j in zip(values, index_map):
        if v:
            out[j] += v
    return tuple(out)


def restrict_values(values, index_map, target):
    return tuple(v if j == target else 0 for v, j in zip(values, index_map))


def weight_power(w, alpha):
    """``w ** alpha`` with 0 ** alpha = 0, exact for integral ``alpha``."""
    if w == 0:
        return 0
    if isinstance(alpha, Rational) and Fraction(alpha).denominator == 1:
        return Fraction(w) ** int(alpha)
    return float(w) ** float(alpha)


# -- pushforwards, restrictions, conditioning --------------------------


def _check_source(s, arrow, obj):
    source, target = arrow
    if obj.variable != source:
        raise VariableMismatch(f"value lives on {obj.variable}, arrow starts at {source}")
    return s.index_map(source, target)


def push_counts(s: InformationStructure, arrow, nu: CountingFunction) -> CountingFunction:
    m = _check_source(s, arrow, nu)
    return CountingFunction(arrow[1], push_values(nu.counts, m, s.size(arrow[1])))


def restrict_counts(s: InformationStructure, arrow, nu: CountingFunction, y: str):
    """``nu`` restricted to the fiber over ``y``; ``None`` when that fiber is empty of mass."""
    m = _check_source(s, arrow, nu)
    j = s.label_index(arrow[1], y)
    counts = restrict_values(nu.counts, m, j)
    if not any(counts):
        return None
    return CountingFunction(nu.variable, counts)


def push_prob(s: InformationStructure, arrow, p: ProbabilityLaw) -> ProbabilityLaw:
    m = _check_source(s, arrow, p)
    out = [Fraction(0)] * s.size(arrow[1])
    for w, j in zip(p.weights, m):
        out[j] += w
    return ProbabilityLaw(arrow[1], tuple(out))


def condition_prob(s: InformationStructure, arrow, p: ProbabilityLaw, y: str) -> ProbabilityLaw:
    m = _check_source(s, arrow, p)
    j = s.label_index(arrow[1], y)
    mass = sum(w for w, t in zip(p.weights, m) if t == j)
    if mass == 0:
        raise ZeroConditioningMass(f"{arrow[1]} = {y} has probability 0")
    return ProbabilityLaw(p.variable, tuple(w / mass if t == j else Fraction(0) for w, t in zip(p.weights, m)))


# -- entropies ----------------------------------------------------------


def entropy_order(alpha):
    """Parse and check an entropy order: ``"1/2"``, ``2``, ``0.5`` all work."""
    if isinstance(alpha, str):
        alpha = Fraction(alpha)
    elif isinstance(alpha, int):
        alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError(f"entropy order must be positive, got {alpha}")
    return alpha


def entropy(alpha, p) -> float:
    """Tsallis entropy of order ``alpha``; Shannon entropy in nats at ``alpha == 1``.

    ``p`` is a :class:`ProbabilityLaw` or any sequence of weights summing to 1.
    Uses ``0 ln 0 = 0`` and ``0 ** alpha = 0``.
    """
    alpha = entropy_order(alpha)
    weights = p.weights if isinstance(p, ProbabilityLaw) else tuple(p)
    if alpha == 1:
        return math.fsum(-float(w) * math.log(float(w)) for w in weights if w)
    if isinstance(alpha, Rational) and Fraction(alpha).denominator == 1 and all(
        isinstance(w, (int, Fraction)) for w in weights
    ):
        total = sum(Fraction(w) ** int(alpha) for w in weights)
        return float((total - 1) / (1 - Fraction(alpha)))
    total = math.fsum(weight_power(w, alpha) for w in weights)
    return (total - 1.0) / (1.0 - float(alpha))


def entropy_cochain(beta):
    """The 1-cochain ``Z -> S_beta`` in the form the chain-rule code expects."""
    beta = entropy_order(beta)

    def phi(variable, q):
        return entropy(beta, q)

    phi.order = beta
    return phi


# -- module actions ---------------------------------------------------


def _need_coarser(s, y, x):
    if not s.refines(x, y):
        raise NotCoarser(f"{y} is not coarser than {x}")


def act_mult(s: InformationStructure, y: str, g, nu: CountingFunction):
    """``(Y.g)(nu)``: product of ``g`` over the nonempty restrictions of ``nu`` along Y."""
    _need_coarser(s, y, nu.variable)
    m = s.index_map(nu.variable, y)
    out = None
    for j in range(s.size(y)):
        counts = restrict_values(nu.counts, m, j)
        if any(counts):
            value = g(CountingFunction(nu.variable, counts))
            out = value if out is None else out * value
    return out


def act_alpha(s: InformationStructure, y: str, alpha, f, p: ProbabilityLaw):
    """``(Y.f)(p)``: sum of ``(Y_*p(y))**alpha * f(p | Y=y)`` over outcomes with mass."""
    _need_coarser(s, y, p.variable)
    alpha = entropy_order(alpha)
    marginal = push_prob(s, (p.variable, y), p)
    total = 0
    for label, w in zip(s.outcomes(y), marginal.weights):
        if w:
            total = total + weight_power(w, alpha) * f(condition_prob(s, (p.variable, y), p, label))
    return total


def chain_rule_residual(s: InformationStructure, alpha, x: str, y: str, z: str, phi, p: ProbabilityLaw) -> float:
    """``(Y.phi[Z])(p) - phi[YZ](YZ_*p) + phi[Y](Y_*p)`` for a 1-cochain ``phi``.

    ``phi(variable, law)`` evaluates the component at ``variable``; joint
    locality is applied here by pushing ``p`` before each call.
    """
    if p.variable != x:
        raise VariableMismatch(f"law lives on {p.variable}, expected {x}")
    for v in (y, z):
        _need_coarser(s, v, x)
    try:
        yz = s.meet(y, z)
    except NoProduct:
        raise MissingProduct(f"{y} and {z} have no product") from None

    def on_z(q):
        return phi(z, push_prob(s, (x, z), q))

    first = act_alpha(s, y, alpha, on_z, p)
    return float(first) - float(phi(yz, push_prob(s, (x, yz), p))) + float(phi(y, push_prob(s, (x, y), p)))
