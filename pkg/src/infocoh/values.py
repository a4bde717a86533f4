"""Elements of the multiplicative group of positive reals.

Combinatorial functionals take values in R_+^*. Most of the values we meet
are rational and are kept as :class:`fractions.Fraction`. Two other shapes
show up:

* ``r * exp(t)`` with ``r`` and ``t`` rational (the exponential 0-cocycles).
  This is still exact: ``exp(t)`` is irrational for rational ``t != 0``, so
  the pair ``(r, t)`` is a unique representation and equality is decidable.
* values only known through a floating natural logarithm (irrational
  admissible sequences, asymptotic regimes).

:class:`Positive` covers the last two and interoperates with ``Fraction``
through the usual operators. Exact results with zero exponent collapse back
to plain ``Fraction``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

LOG_RTOL = 1e-10


def _log_fraction(q: Fraction) -> float:
    # math.log accepts arbitrarily large ints; float(q) would overflow
    return math.log(q.numerator) - math.log(q.denominator)


class Positive:
    __slots__ = ("rational", "exponent", "log")

    def __init__(self, rational=None, exponent=Fraction(0), log=None):
        if log is None:
            rational = Fraction(rational)
            if rational <= 0:
                raise ValueError(f"group values are positive, got {rational}")
            self.rational = rational
            self.exponent = Fraction(exponent)
            self.log = None
        else:
            self.rational = None
            self.exponent = None
            self.log = float(log)

    @classmethod
    def from_log(cls, log: float) -> Positive:
        return cls(log=log)

    @classmethod
    def exp(cls, t) -> Fraction | Positive:
        return _normal(Fraction(1), Fraction(t))

    @property
    def exact(self) -> bool:
        return self.log is None

    def ln(self) -> float:
        if self.log is not None:
            return self.log
        return _log_fraction(self.rational) + float(self.exponent)

    def __float__(self) -> float:
        return math.exp(self.ln())

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.exact and other.exact:
            return _normal(self.rational * other.rational, self.exponent + other.exponent)
        return Positive(log=self.ln() + other.ln())

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def inverse(self):
        if self.exact:
            return _normal(1 / self.rational, -self.exponent)
        return Positive(log=-self.log)

    def __pow__(self, e):
        if self.exact and isinstance(e, Rational) and Fraction(e).denominator == 1:
            e = int(e)
            return _normal(self.rational**e, self.exponent * e)
        if self.exact and self.rational == 1 and isinstance(e, Rational):
            return _normal(Fraction(1), self.exponent * e)
        return Positive(log=self.ln() * float(e))

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.exact and other.exact:
            return self.rational == other.rational and self.exponent == other.exponent
        if self.exact or other.exact:
            return False
        return self.log == other.log

    def __hash__(self):
        if self.exact:
            return hash((self.rational, self.exponent))
        return hash(self.log)

    def __repr__(self):
        if self.exact:
            return f"Positive({self.rational}*exp({self.exponent}))"
        return f"Positive(log={self.log!r})"


def _coerce(x):
    if isinstance(x, Positive):
        return x
    if isinstance(x, (int, Fraction)):
        return Positive(Fraction(x))
    return NotImplemented


def _normal(r: Fraction, t: Fraction):
    if t == 0:
        return r
    return Positive(r, t)


def is_exact(x) -> bool:
    if isinstance(x, Positive):
        return x.exact
    return isinstance(x, (int, Fraction))


def ln(x) -> float:
    """Natural logarithm of a group value, as a float."""
    if isinstance(x, Positive):
        return x.ln()
    if isinstance(x, (int, Fraction)):
        return _log_fraction(Fraction(x))
    return math.log(x)


def power(x, e):
    """``x ** e`` staying exact whenever that is possible."""
    if isinstance(x, (int, Fraction)):
        if isinstance(e, Rational) and Fraction(e).denominator == 1:
            return Fraction(x) ** int(e)
        return Positive(Fraction(x)) ** e
    return x**e


def same(a, b, rtol: float = LOG_RTOL) -> bool:
    """Group equality: exact when both sides are exact, log-relative otherwise."""
    if is_exact(a) and is_exact(b):
        return a == b
    la, lb = ln(a), ln(b)
    return abs(la - lb) <= rtol * max(1.0, abs(la), abs(lb))


def is_one(x, rtol: float = LOG_RTOL) -> bool:
    if isinstance(x, Fraction) or isinstance(x, int):
        return x == 1
    return same(x, Fraction(1), rtol)


def to_json(x):
    """Exact values as ``"p/q"`` strings (plus exponent), inexact as ``{"log": ...}``."""
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    if x.exact:
        return {"rational": str(x.rational), "exp": str(x.exponent)}
    return {"log": x.log}


def from_json(obj):
    if isinstance(obj, bool):
        raise ValueError("booleans are not values")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        return Fraction(obj)
    if isinstance(obj, dict):
        if set(obj) == {"log"}:
            return Positive.from_log(obj["log"])
        if set(obj) <= {"rational", "exp"}:
            return _normal(Fraction(obj.get("rational", 1)), Fraction(obj.get("exp", 0)))
    raise ValueError(f"cannot read a group value from {obj!r}")
