"""Exact rationals and points of the circle.

A circle point exp(2*pi*i*p/q) is stored as the reduced fraction p/q in
[0, 1).  Everything is eager-normalized, so equality is field equality.
Rationals are plain :class:`fractions.Fraction` values.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from bsva.errors import InvalidDenominator, InvalidParams

Rational = Fraction

__all__ = [
    "Rational",
    "RationalAngle",
    "ZERO",
    "normalize",
    "angle_pow",
    "angle_add",
    "angle_neg",
    "lambda_of",
    "parse_rational",
    "format_rational",
]


@dataclass(frozen=True, order=True)
class RationalAngle:
    """The circle point with angle ``p/q`` turns, ``0 <= p < q``, ``gcd(p, q) == 1``.

    Use :func:`normalize` (or :meth:`of`) to build one from arbitrary integers;
    the constructor only validates.
    """

    p: int
    q: int

    def __post_init__(self):
        if self.q <= 0 or not 0 <= self.p < self.q or gcd(self.p, self.q) != 1:
            raise ValueError(f"non-canonical angle {self.p}/{self.q}")

    @classmethod
    def of(cls, value) -> "RationalAngle":
        """Build from a Fraction, int, or ``"p/q"`` string, folding mod 1."""
        if isinstance(value, RationalAngle):
            return value
        if isinstance(value, str):
            value = parse_rational(value)
        value = Fraction(value)
        return normalize(value.numerator, value.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __str__(self):
        return f"{self.p}/{self.q}"

    def __repr__(self):
        return f"RationalAngle({self.p}/{self.q})"


ZERO = RationalAngle(0, 1)


def _make(p: int, q: int) -> RationalAngle:
    # caller guarantees canonical input
    obj = object.__new__(RationalAngle)
    object.__setattr__(obj, "p", p)
    object.__setattr__(obj, "q", q)
    return obj


def normalize(p: int, q: int) -> RationalAngle:
    """Reduced representative of ``p/q`` mod 1."""
    if q == 0:
        raise InvalidDenominator("angle denominator must be nonzero")
    if q < 0:
        p, q = -p, -q
    p %= q
    g = gcd(p, q)
    return _make(p // g, q // g)


def angle_pow(theta: RationalAngle, k: int) -> RationalAngle:
    """The circle point ``theta**k``; powering multiplies the angle by ``k``."""
    return normalize(k * theta.p, theta.q)


def angle_add(t1: RationalAngle, t2: RationalAngle) -> RationalAngle:
    """Product of two circle points, i.e. the sum of their angles mod 1."""
    return normalize(t1.p * t2.q + t2.p * t1.q, t1.q * t2.q)


def angle_neg(theta: RationalAngle) -> RationalAngle:
    return angle_pow(theta, -1)


def lambda_of(n: int, m: int) -> Fraction:
    """The ratio ``n/|m|`` attached to BS(n, m); requires ``2 <= n < |m|``."""
    if not 2 <= n < abs(m):
        raise InvalidParams(f"need 2 <= n < |m|, got n={n}, m={m}")
    return Fraction(n, abs(m))


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, ZeroDivisionError):
            raise InvalidDenominator(f"zero denominator in {text!r}") from None
        raise ValueError(f"not a rational: {text!r}") from None


def format_rational(x: Fraction) -> str:
    """Serialize as ``a/b``, always with an explicit denominator."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"
