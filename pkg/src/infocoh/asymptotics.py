"""Normalized log-coefficients and their entropy limits.

For a counting function ``nu_n`` with ``nu_n / n -> p``, the Fontené-Ward
coefficients of the standard families grow like ``exp(c n^alpha S_alpha(p))``:

* natural numbers, ``alpha = 1``: ``c = 1`` (Shannon entropy in nats);
* q-integers, ``alpha = 2``: ``c = ln(q) / 2``;
* ``D_n = exp(K (n^(alpha-1) - 1))``: ``c = K (alpha - 1) / alpha``, so that
  ``c S_alpha(p) = (K / alpha)(1 - sum p^alpha)``.

Everything here runs in the log domain, so ``n`` in the thousands is cheap.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import UnsupportedFamily
from .fontene_ward import ALPHA, GAUSSIAN, NATURAL, AdmissibleSequence
from .functionals import CountingFunction, ProbabilityLaw, entropy, entropy_order

DEFAULT_TOL = 0.05


def _weights(p):
    if isinstance(p, ProbabilityLaw):
        return p.variable, p.weights
    weights = tuple(Fraction(w) for w in p)
    if sum(weights) != 1:
        raise ValueError(f"weights sum to {sum(weights)}, not 1")
    return "", weights


def rational_approximation(p, n: int) -> tuple[int, ...]:
    """Largest-remainder rounding of ``n p`` to integers summing to ``n``.

    Ties between equal remainders go to the smaller index.
    """
    _, weights = _weights(p)
    exact = [w * n for w in weights]
    floors = [math.floor(e) for e in exact]
    left = n - sum(floors)
    order = sorted(range(len(exact)), key=lambda i: (-(exact[i] - floors[i]), i))
    for i in order[:left]:
        floors[i] += 1
    return tuple(floors)


def rational_approximation_sequence(p, ns) -> list[CountingFunction]:
    ns = list(ns)
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise ValueError("ns must be strictly increasing")
    variable, _ = _weights(p)
    return [CountingFunction(variable, rational_approximation(p, n)) for n in ns]


def default_ns(alpha) -> list[int]:
    """Powers of two from 16 to 4096 when ``alpha <= 1``, to 256 otherwise."""
    cap = 4096 if Fraction(alpha) <= 1 else 256
    return [2**k for k in range(4, cap.bit_length())]


@dataclass
class RateEstimate:
    alpha: object
    samples: list  # [(n, ln psi(nu_n) / n^alpha)]
    limit: float
    certificate: float

    def to_json(self) -> dict:
        return {
            "alpha": str(self.alpha),
            "samples": [[n, v] for n, v in self.samples],
            "limit": self.limit,
            "certificate": self.certificate,
        }


def log_coefficient(source, counts) -> float:
    """``ln psi(nu)`` for an admissible sequence or a callable returning a log."""
    if isinstance(source, AdmissibleSequence):
        return source.log_multinomial(counts)
    return float(source(counts))


def rate_estimate(source, p, alpha, ns=None) -> RateEstimate:
    """Sample ``ln psi(nu_n) / n^alpha`` along a rational approximation of ``p``.

    The limit is the last sample; the certificate is the largest distance to
    it over the final third of the samples.
    """
    alpha = entropy_order(alpha)
    ns = list(ns) if ns is not None else default_ns(alpha)
    nus = rational_approximation_sequence(p, ns)
    a = float(alpha)
    samples = [(n, log_coefficient(source, nu.counts) / n**a) for n, nu in zip(ns, nus)]
    limit = samples[-1][1]
    tail = samples[len(samples) - math.ceil(len(samples) / 3) :]
    certificate = max(abs(v - limit) for _, v in tail)
    return RateEstimate(alpha, samples, limit, certificate)


def entropy_constant(D: AdmissibleSequence) -> float:
    """The factor ``c`` in front of ``S_alpha`` for the supported families."""
    if D.kind == NATURAL:
        return 1.0
    if D.kind == GAUSSIAN:
        return math.log(D.params[0]) / 2
    if D.kind == ALPHA:
        K, alpha = D.params
        return float(K) * (float(alpha) - 1.0) / float(alpha)
    raise UnsupportedFamily(f"no entropy limit is known for {D.tag}")


def entropy_target(D: AdmissibleSequence, alpha, p) -> float:
    _, weights = _weights(p)
    return entropy_constant(D) * entropy(alpha, weights)


def sandwich_bounds(K, alpha, n: int) -> tuple[float, float, float]:
    """``(low, log [n]!, high)`` for ``D_n = exp(K (n^(alpha-1) - 1))``.

    From ``int_0^n x^(a-1) dx`` and ``int_1^(n+1) x^(a-1) dx`` around
    ``sum_{i<=n} i^(a-1)``; the order flips when ``a < 1`` or ``K < 0``.
    """
    a, K = float(alpha), float(K)
    total = math.fsum(i ** (a - 1.0) for i in range(1, n + 1))
    lo_sum, hi_sum = n**a / a, (n + 1) ** a / a - 1.0 / a
    if a < 1:
        lo_sum, hi_sum = hi_sum, lo_sum
    lo, mid, hi = K * (lo_sum - n), K * (total - n), K * (hi_sum - n)
    if K < 0:
        lo, hi = hi, lo
    return lo, mid, hi


@dataclass
class LimitReport:
    family: str
    alpha: object
    p: list
    estimate: RateEstimate
    target: float
    tolerance: float
    sandwich: list = field(default_factory=list)  # [(n, low, value, high, ok)]

    @property
    def sandwich_ok(self) -> bool:
        return all(row[-1] for row in self.sandwich)

    @property
    def ok(self) -> bool:
        return (
            self.estimate.certificate < self.tolerance
            and abs(self.estimate.limit - self.target) < self.tolerance
            and self.sandwich_ok
        )

    @property
    def verdict(self) -> str:
        return "PASS" if self.ok else "FAIL"

    def to_json(self) -> dict:
        obj = {
            "family": self.family,
            "alpha": str(self.alpha),
            "p": [str(w) for w in self.p],
            "samples": [[n, v] for n, v in self.estimate.samples],
            "limit": self.estimate.limit,
            "target": self.target,
            "certificate": self.estimate.certificate,
            "tolerance": self.tolerance,
            "verdict": self.verdict,
        }
        if self.sandwich:
            obj["sandwich"] = [
                {"n": n, "low": lo, "log_factorial": v, "high": hi, "ok": ok}
                for n, lo, v, hi, ok in self.sandwich
            ]
        return obj


def entropy_limit_check(D: AdmissibleSequence, alpha, p, tolerance: float = DEFAULT_TOL, ns=None) -> LimitReport:
    """Compare the sampled limit with ``c S_alpha(p)``; also test the factorial sandwich.

    Raises :class:`UnsupportedFamily` for families without a known limit.
    """
    alpha = entropy_order(alpha)
    target = entropy_target(D, alpha, p)
    est = rate_estimate(D, p, alpha, ns)
    rows = []
    if D.kind == ALPHA:
        K, a = D.params
        for n, _ in est.samples:
            lo, mid, hi = sandwich_bounds(K, a, n)
            rows.append((n, lo, mid, hi, lo < mid < hi))
    _, weights = _weights(p)
    return LimitReport(D.tag, alpha, list(weights), est, target, tolerance, rows)


@dataclass
class ChainReport:
    n: int
    lhs: float  # ln W(nu) / n^a
    rhs: float  # coarse term + conditional term, each from coefficient logs
    target: float  # c * (S(coarse) + w^a S(conditional)) = c * S(p)
    tolerance: float

    @property
    def identity_residual(self) -> float:
        return abs(self.lhs - self.rhs)

    @property
    def entropy_residual(self) -> float:
        return abs(self.rhs - self.target)

    @property
    def ok(self) -> bool:
        return self.identity_residual < self.tolerance and self.entropy_residual < self.tolerance

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "target": self.target,
            "identity_residual": self.identity_residual,
            "entropy_residual": self.entropy_residual,
            "verdict": "PASS" if self.ok else "FAIL",
        }


def chain_rule_limit_check(D: AdmissibleSequence, alpha, p, grouping, tolerance: float = 0.01, n=None) -> ChainReport:
    """Normalized logs of ``W(nu) = W(coarse nu) * prod_g W(nu restricted to g)``.

    ``grouping[i]`` is the coarse outcome of fine outcome ``i``. At the
    largest ``n`` both sides are compared with each other and with the
    entropy chain rule ``c (S(coarse) + sum_g w_g^alpha S(p | g))``.
    """
    alpha = entropy_order(alpha)
    a = float(alpha)
    n = n if n is not None else default_ns(alpha)[-1]
    _, weights = _weights(p)
    nu = rational_approximation(weights, n)
    m = max(grouping) + 1
    coarse = [0] * m
    coarse_p = [Fraction(0)] * m
    for i, g in enumerate(grouping):
        coarse[g] += nu[i]
        coarse_p[g] += weights[i]
    scale = n**a
    lhs = D.log_multinomial(nu) / scale
    rhs = D.log_multinomial(coarse) / scale
    c = entropy_constant(D)
    target = c * entropy(alpha, coarse_p)
    for g in range(m):
        block = [nu[i] for i in range(len(nu)) if grouping[i] == g]
        if sum(block):
            rhs += D.log_multinomial(block) / scale
        w = coarse_p[g]
        if w:
            cond = [weights[i] / w for i in range(len(nu)) if grouping[i] == g]
            target += c * float(w) ** a * entropy(alpha, cond)
    return ChainReport(n, lhs, rhs, target, tolerance)


def samples_csv(estimate: RateEstimate) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "value"])
    for n, v in estimate.samples:
        w.writerow([n, repr(v)])
    return buf.getvalue()
