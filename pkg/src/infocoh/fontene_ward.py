"""Admissible sequences, D-factorials and Fontené-Ward multinomial coefficients.

An admissible sequence is a positive sequence ``D_1, D_2, ...`` with
``D_1 = 1``. It defines ``[n]_D! = D_n ... D_1`` (``[0]_D! = 1``) and the
coefficients ``[n]_D! / ([k_1]_D! ... [k_s]_D!)`` with ``n = sum k_i``.

Rational families (natural numbers, q-integers, Fibonacci, explicit
fractions) are evaluated exactly as :class:`~fractions.Fraction`. The
families of the form ``exp(K (n**(alpha-1) - 1))`` and explicit log tables
live in the log domain and return :class:`~infocoh.values.Positive`.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

from .errors import AllZeroParts, InconsistentTable, InvalidGrouping, OutOfRange
from .values import Positive, ln, same

NATURAL = "natural"
GAUSSIAN = "gaussian"
FIBONACCI = "fibonacci"
ALPHA = "alpha"
EXPLICIT = "explicit"
EXPLICIT_LOG = "explicit-log"

_EXACT_KINDS = {NATURAL, GAUSSIAN, FIBONACCI, EXPLICIT}


class AdmissibleSequence:
    """A lazily evaluated admissible sequence with memoized factorials.

    Use the module-level constructors (:func:`natural`, :func:`gaussian`, ...)
    rather than calling this directly.
    """

    def __init__(self, kind: str, params: tuple):
        self.kind = kind
        self.params = params
        self._lock = threading.Lock()
        self._terms: list = [None]  # 1-based
        self._fact: list = [Fraction(1)]
        self._logfact: list[float] = [0.0]
        self._coeffs: dict = {}
        self._check()

    def __getstate__(self):
        return {"kind": self.kind, "params": self.params}

    def __setstate__(self, state):
        self.__init__(state["kind"], state["params"])

    def _check(self):
        if self.kind == GAUSSIAN:
            (q,) = self.params
            if q <= 0 or q == 1:
                raise ValueError(f"q must be positive and different from 1, got {q}")
        elif self.kind == ALPHA:
            _, alpha = self.params
            if alpha <= 0 or alpha == 1:
                raise ValueError(f"alpha must be positive and different from 1, got {alpha}")
        elif self.kind == EXPLICIT:
            values = self.params
            if not values or values[0] != 1:
                raise ValueError("explicit sequences must start with D_1 = 1")
            if any(v <= 0 for v in values):
                raise ValueError("admissible sequences are positive")
        elif self.kind == EXPLICIT_LOG:
            if not self.params or self.params[0] != 0:
                raise ValueError("explicit log sequences must start with log D_1 = 0")
        elif self.kind not in (NATURAL, FIBONACCI):
            raise ValueError(f"unknown sequence kind {self.kind!r}")

    @property
    def exact(self) -> bool:
        return self.kind in _EXACT_KINDS

    @property
    def length(self) -> int | None:
        """Number of available terms, ``None`` for infinite families."""
        if self.kind in (EXPLICIT, EXPLICIT_LOG):
            return len(self.params)
        return None

    # -- terms ---------------------------------------------------------

    def _exact_term(self, n: int) -> Fraction:
        if self.kind == NATURAL:
            return Fraction(n)
        if self.kind == GAUSSIAN:
            (q,) = self.params
            return (q**n - 1) / (q - 1)
        if self.kind == FIBONACCI:
            a, b = 1, 1
            for _ in range(n - 1):
                a, b = b, a + b
            return Fraction(a)
        return self.params[n - 1]

    def _log_term(self, n: int) -> float:
        if self.kind == ALPHA:
            K, alpha = self.params
            return float(K) * (n ** (float(alpha) - 1.0) - 1.0)
        if self.kind == EXPLICIT_LOG:
            return self.params[n - 1]
        return ln(self.term(n))

    def _in_range(self, n: int):
        if n < 1:
            raise OutOfRange(f"terms are indexed from 1, got {n}")
        if self.length is not None and n > self.length:
            raise OutOfRange(f"sequence {self.tag} only has {self.length} terms")

    def term(self, n: int):
        """``D_n``: a Fraction for exact kinds, a log-domain Positive otherwise."""
        self._in_range(n)
        if self.exact:
            return self._exact_term(n)
        return Positive.from_log(self._log_term(n))

    def log_term(self, n: int) -> float:
        self._in_range(n)
        return self._log_term(n)

    def prefix(self, n: int) -> list:
        return [self.term(i) for i in range(1, n + 1)]

    # -- factorials ----------------------------------------------------

    def factorial(self, n: int):
        """``[n]_D!``, exact or log-domain depending on the kind."""
        if n < 0:
            raise OutOfRange("factorials need n >= 0")
        if not self.exact:
            return Positive.from_log(self.log_factorial(n))
        if self.kind == NATURAL:
            return Fraction(math.factorial(n))
        if n >= len(self._fact):
            with self._lock:
                while len(self._fact) <= n:
                    k = len(self._fact)
                    self._fact.append(self._fact[-1] * self.term(k))
        return self._fact[n]

    def log_factorial(self, n: int) -> float:
        if n < 0:
            raise OutOfRange("factorials need n >= 0")
        if self.kind == NATURAL:
            return math.lgamma(n + 1)
        if n >= len(self._logfact):
            with self._lock:
                if self.kind == ALPHA:
                    self._extend_alpha(n)
                else:
                    while len(self._logfact) <= n:
                        k = len(self._logfact)
                        self._logfact.append(self._logfact[-1] + self.log_term(k))
        return self._logfact[n]

    def _extend_alpha(self, n: int):
        # K factored out so that rescaling K rescales every value bit-exactly
        # when the factor is a power of two.
        K, alpha = self.params
        if not hasattr(self, "_alpha_sums"):
            self._alpha_sums = [0.0]
        sums = self._alpha_sums
        e = float(alpha) - 1.0
        while len(sums) <= n:
            k = len(sums)
            sums.append(sums[-1] + k**e)
        self._logfact = [float(K) * (sums[k] - k) for k in range(len(sums))]

    # -- coefficients --------------------------------------------------

    def multinomial(self, parts):
        """Fontené-Ward coefficient of ``parts`` (zeros allowed, order ignored)."""
        key = tuple(sorted(p for p in parts if p))
        try:
            return self._coeffs[key]
        except KeyError:
            pass
        if any(p < 0 for p in parts):
            raise ValueError("parts are nonnegative")
        if not key:
            raise AllZeroParts("at least one part must be positive")
        if self.exact:
            den = Fraction(1)
            for p in key:
                den *= self.factorial(p)
            value = self.factorial(sum(key)) / den
        else:
            value = Positive.from_log(self.log_multinomial(key))
        if len(self._coeffs) < 200_000:
            self._coeffs[key] = value
        return value

    def log_multinomial(self, parts) -> float:
        parts = [p for p in parts if p]
        if not parts:
            raise AllZeroParts("at least one part must be positive")
        return self.log_factorial(sum(parts)) - math.fsum(self.log_factorial(p) for p in parts)

    # -- identity ------------------------------------------------------

    @property
    def tag(self) -> str:
        if self.kind in (NATURAL, FIBONACCI):
            return self.kind
        if self.kind == GAUSSIAN:
            return f"gaussian:q={self.params[0]}"
        if self.kind == ALPHA:
            K, alpha = self.params
            return f"alpha:K={K},alpha={alpha}"
        if self.kind == EXPLICIT:
            return "explicit:" + ",".join(str(v) for v in self.params)
        return "explicit-log:" + ",".join(repr(v) for v in self.params)

    def __eq__(self, other):
        if not isinstance(other, AdmissibleSequence):
            return NotImplemented
        return (self.kind, self.params) == (other.kind, other.params)

    def __hash__(self):
        return hash((self.kind, self.params))

    def __repr__(self):
        return f"AdmissibleSequence({self.tag!r})"


# -- constructors --------------------------------------------------------


def natural() -> AdmissibleSequence:
    return AdmissibleSequence(NATURAL, ())


def gaussian(q) -> AdmissibleSequence:
    return AdmissibleSequence(GAUSSIAN, (Fraction(q),))


def fibonacci() -> AdmissibleSequence:
    return AdmissibleSequence(FIBONACCI, ())


def alpha_family(K, alpha) -> AdmissibleSequence:
    """``D_n = exp(K (n**(alpha-1) - 1))``; irrational, so log-domain only."""
    return AdmissibleSequence(ALPHA, (_number(K), _number(alpha)))


def explicit(values) -> AdmissibleSequence:
    return AdmissibleSequence(EXPLICIT, tuple(Fraction(v) for v in values))


def explicit_log(logs) -> AdmissibleSequence:
    return AdmissibleSequence(EXPLICIT_LOG, tuple(float(v) for v in logs))


def _number(x):
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def parse_sequence(tag: str) -> AdmissibleSequence:
    """Parse a family tag such as ``gaussian:q=2`` or ``alpha:K=1,alpha=1/2``."""
    name, _, rest = tag.strip().partition(":")
    name = name.lower()
    if name in (NATURAL, FIBONACCI):
        if rest:
            raise ValueError(f"{name} takes no parameters")
        return natural() if name == NATURAL else fibonacci()
    if name in (EXPLICIT, EXPLICIT_LOG):
        values = [v for v in rest.split(",") if v.strip()]
        return explicit(values) if name == EXPLICIT else explicit_log(values)
    params = {}
    for item in filter(None, rest.split(",")):
        key, eq, value = item.partition("=")
        if not eq:
            raise ValueError(f"expected key=value in {tag!r}")
        params[key.strip()] = value.strip()
    if name == GAUSSIAN and set(params) == {"q"}:
        return gaussian(Fraction(params["q"]))
    if name == ALPHA and set(params) == {"K", "alpha"}:
        return alpha_family(Fraction(params["K"]), Fraction(params["alpha"]))
    raise ValueError(f"cannot parse sequence tag {tag!r}")


# -- operations -----------------------------------------------------------


def d_factorial(D: AdmissibleSequence, n: int):
    return D.factorial(n)


def fw_multinomial(D: AdmissibleSequence, parts):
    return D.multinomial(tuple(parts))


def fw_binomial(D: AdmissibleSequence, n: int, k: int):
    return D.multinomial((k, n - k))


def pascal_residual(D: AdmissibleSequence, n: int, k: int):
    """Left minus right side of the additive Pascal recurrence, for ``1 <= k < n``.

    ``C(n,k) - C(n-1,k) - C(n-1,k-1) (D_n - D_{n-k}) / D_k``. Exact kinds
    return a Fraction; log kinds return the difference relative to ``C(n,k)``.
    """
    if not 1 <= k <= n - 1:
        raise OutOfRange(f"need 1 <= k <= n-1, got n={n}, k={k}")

    def binom(a, b):
        return D.multinomial((b, a - b)) if a > 0 else Fraction(1)

    if D.exact:
        lhs = binom(n, k) - binom(n - 1, k)
        rhs = binom(n - 1, k - 1) * (D.term(n) - D.term(n - k)) / D.term(k)
        return lhs - rhs
    big = float(binom(n, k))
    lhs = big - float(binom(n - 1, k))
    rhs = float(binom(n - 1, k - 1)) * (
        math.exp(D.log_term(n)) - math.exp(D.log_term(n - k))
    ) / math.exp(D.log_term(k))
    return (lhs - rhs) / big


def grouping_identity_residual(D: AdmissibleSequence, parts, grouping):
    """Ratio of a coefficient to the product of its coarse-grained pieces.

    ``grouping[i]`` is the group of part ``i``; groups must be ``0..m-1``,
    all used. The ratio is 1 for every admissible sequence.
    """
    parts = tuple(parts)
    grouping = tuple(grouping)
    if len(grouping) != len(parts):
        raise InvalidGrouping("grouping must assign a group to every part")
    m = max(grouping, default=-1) + 1
    if set(grouping) != set(range(m)):
        raise InvalidGrouping("grouping must be a surjection onto 0..m-1")
    totals = [0] * m
    members: list[list[int]] = [[] for _ in range(m)]
    for p, g in zip(parts, grouping):
        totals[g] += p
        members[g].append(p)
    full = D.multinomial(parts)
    pieces = D.multinomial(totals)
    for block in members:
        if any(block):
            pieces = pieces * D.multinomial(block)
    return full / pieces


def binomial_table(D: AdmissibleSequence, N: int) -> dict[tuple[int, int], object]:
    """``(n1, n2) -> C(n1+n2; n1, n2)_D`` for ``0 < n1 + n2 <= N``."""
    return {
        (a, n - a): D.multinomial((a, n - a)) for n in range(1, N + 1) for a in range(n + 1)
    }


def sequence_from_binomials(table) -> AdmissibleSequence:
    """Recover the admissible sequence behind a table of FW binomials.

    ``D_n`` is read off ``C(n; 1, n-1) = D_n``; every entry is then checked
    against the coefficients of the recovered sequence.
    """
    if not table:
        raise InconsistentTable("empty table")
    N = max(a + b for a, b in table)
    missing = [(1, n - 1) for n in range(1, N + 1) if (1, n - 1) not in table]
    if missing:
        raise InconsistentTable(f"table lacks the entries {missing}")
    terms = [table[(1, n - 1)] for n in range(1, N + 1)]
    exact = all(isinstance(t, (int, Fraction)) for t in terms)
    if not same(terms[0], Fraction(1)):
        raise InconsistentTable(f"C(1; 1, 0) = {terms[0]} but admissible sequences have D_1 = 1")
    if exact:
        D = explicit(terms)
    else:
        D = explicit_log([0.0] + [ln(t) for t in terms[1:]])
    for key in sorted(table):
        if not same(table[key], D.multinomial(key)):
            raise InconsistentTable(f"entry {key} disagrees with the recovered sequence")
    return D
