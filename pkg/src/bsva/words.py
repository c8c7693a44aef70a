"""Words, Britton reduction and normal forms in BS(n, m) = <a, b | b a^n b^-1 = a^m>.

Normal forms use coset representatives ``0..|n|-1`` after ``b`` and
``0..|m|-1`` after ``b^-1``; a word's normal form is

    a^z  b^e1 a^r1  ...  b^ek a^rk

with no pinch ``b a^0 b^-1`` or ``b^-1 a^0 b``.  Two words are equal in the
group exactly when their normal forms coincide.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

from bsva import _kernels
from bsva.errors import InvalidParams, WordSyntaxError

__all__ = [
    "BsParams",
    "Letter",
    "Word",
    "NormalForm",
    "parse_word",
    "free_reduce",
    "britton_reduce",
    "normal_form",
    "multiply",
    "invert",
    "is_identity",
    "affine_image",
    "in_power_subgroup",
    "conjugate_count",
]


@dataclass(frozen=True)
class BsParams:
    """Parameters of BS(n, m).

    Word-level operations accept any nonzero ``n``, ``m``.  The relation and
    type machinery needs the standing range ``2 <= n < |m|``; see
    :meth:`require_admissible`.
    """

    n: int
    m: int

    def __post_init__(self):
        if not isinstance(self.n, int) or not isinstance(self.m, int):
            raise InvalidParams("n and m must be integers")
        if self.n == 0 or self.m == 0:
            raise InvalidParams(f"n and m must be nonzero, got n={self.n}, m={self.m}")

    @property
    def admissible(self) -> bool:
        return 2 <= self.n < abs(self.m)

    def require_admissible(self) -> "BsParams":
        if not self.admissible:
            raise InvalidParams(f"need 2 <= n < |m|, got n={self.n}, m={self.m}")
        return self

    def __str__(self):
        return f"BS({self.n},{self.m})"


class Letter(NamedTuple):
    """``a^exp`` when ``kind == "a"`` (exp != 0), ``b^exp`` with exp = +-1 otherwise."""

    kind: str
    exp: int

    def __str__(self):
        if self.kind == "a":
            return "a" if self.exp == 1 else f"a^{self.exp}"
        return "b" if self.exp == 1 else "B"


def a(k: int = 1) -> Letter:
    return Letter("a", k)


def b(eps: int = 1) -> Letter:
    return Letter("b", eps)


@dataclass(frozen=True)
class Word:
    """A freely reduced word; build with :func:`free_reduce` or :func:`parse_word`."""

    letters: tuple = ()

    def syllables(self):
        """Split as ``(e0, [(s1, e1), ...])`` for ``a^e0 b^s1 a^e1 ...``."""
        e0 = 0
        syls = []
        for kind, exp in self.letters:
            if kind == "a":
                if syls:
                    syls[-1] = (syls[-1][0], syls[-1][1] + exp)
                else:
                    e0 += exp
            else:
                syls.append((exp, 0))
        return e0, syls

    @classmethod
    def from_syllables(cls, e0, syls) -> "Word":
        letters = []
        if e0:
            letters.append(Letter("a", e0))
        for s, e in syls:
            letters.append(Letter("b", s))
            if e:
                letters.append(Letter("a", e))
        return cls(tuple(letters))

    def inverse(self) -> "Word":
        return Word(tuple(Letter(k, -e) for k, e in reversed(self.letters)))

    def __mul__(self, other: "Word") -> "Word":
        return free_reduce(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return " ".join(str(x) for x in self.letters) if self.letters else "e"


@dataclass(frozen=True)
class NormalForm:
    z: int
    syllables: tuple = ()

    @property
    def is_identity(self) -> bool:
        return self.z == 0 and not self.syllables

    def to_word(self) -> Word:
        return Word.from_syllables(self.z, self.syllables)

    def __str__(self):
        parts = [f"a^{self.z}"]
        parts += [f"(b^{s} a^{r})" for s, r in self.syllables]
        return " ".join(parts)


_TOKEN = re.compile(r"\s*([aAbB])(?:\^(-?\d+))?")


def parse_word(text: str) -> Word:
    """Parse ``"b a^2 B"`` / ``"ba^2B"``; ``A`` and ``B`` are the inverses.

    ``"e"``, ``"1"`` and the empty string denote the identity.
    """
    stripped = text.strip()
    if stripped in ("", "e", "1"):
        return Word()
    letters = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if not match:
            raise WordSyntaxError(f"cannot parse word at position {pos}: {text!r}")
        ch, power = match.group(1), match.group(2)
        k = int(power) if power is not None else 1
        sign = 1 if ch.islower() else -1
        if ch in "aA":
            letters.append(Letter("a", sign * k))
        else:
            letters.extend([Letter("b", sign if k > 0 else -sign)] * abs(k))
        pos = match.end()
    return free_reduce(letters)


def free_reduce(letters: Iterable) -> Word:
    """Merge adjacent a-powers, drop ``a^0`` and cancel ``b b^-1`` pairs."""
    out: list = []
    for kind, exp in letters:
        if kind == "a":
            if exp == 0:
                continue
            if out and out[-1][0] == "a":
                total = out[-1][1] + exp
                out.pop()
                if total:
                    out.append(Letter("a", total))
                continue
            out.append(Letter("a", exp))
        elif kind == "b":
            if exp not in (1, -1):
                raise WordSyntaxError(f"b-letter exponent must be +-1, got {exp}")
            if out and out[-1][0] == "b" and out[-1][1] == -exp:
                out.pop()
                continue
            out.append(Letter("b", exp))
        else:
            raise WordSyntaxError(f"unknown letter kind {kind!r}")
    return Word(tuple(out))


def _as_word(w) -> Word:
    if isinstance(w, Word):
        return w
    if isinstance(w, str):
        return parse_word(w)
    return free_reduce(w)


def britton_reduce(params: BsParams, w, strategy: str = "leftmost") -> Word:
    """Apply pinches ``b a^{kn} b^-1 -> a^{km}`` and ``b^-1 a^{km} b -> a^{kn}`` to a fixpoint.

    The result is empty exactly when ``w`` is trivial in the group.
    """
    w = _as_word(w)
    e0, syls = w.syllables()
    if strategy == "leftmost":
        e0, syls = _kernels.britton_left(params.n, params.m, e0, syls)
    elif strategy == "rightmost":
        e0, syls = _kernels.britton_right(params.n, params.m, e0, syls)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return Word.from_syllables(e0, syls)


def normal_form(params: BsParams, w, strategy: str = "leftmost") -> NormalForm:
    """Canonical form of ``w``.

    ``"leftmost"`` and ``"rightmost"`` run pinch reduction in that order and
    then one right-to-left sweep pushing exponents onto coset representatives
    (the sweep never creates a pinch).  ``"incremental"`` instead
    right-multiplies syllable by syllable.  All three agree.
    """
    w = _as_word(w)
    e0, syls = w.syllables()
    n, m = params.n, params.m
    if strategy == "incremental":
        z, out = _kernels.normal_form(n, m, e0, syls)
    elif strategy == "leftmost":
        z, out = _kernels.sweep(n, m, *_kernels.britton_left(n, m, e0, syls))
    elif strategy == "rightmost":
        z, out = _kernels.sweep(n, m, *_kernels.britton_right(n, m, e0, syls))
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return NormalForm(z, tuple(out))


def multiply(params: BsParams, w1, w2) -> NormalForm:
    return normal_form(params, _as_word(w1) * _as_word(w2))


def invert(params: BsParams, w) -> NormalForm:
    return normal_form(params, _as_word(w).inverse())


def is_identity(params: BsParams, w) -> bool:
    return normal_form(params, w).is_identity


def affine_image(params: BsParams, w) -> tuple[Fraction, Fraction]:
    """``(u, v)`` with ``w`` acting as ``x -> u x + v`` under a -> x+1, b -> (m/n) x.

    The representation is a homomorphism but not injective: trivial words map
    to ``(1, 0)``, the converse need not hold.
    """
    e0, syls = _as_word(w).syllables()
    U, V, D = _kernels.affine(params.n, params.m, e0, syls)
    return Fraction(U, D), Fraction(V, D)


def in_power_subgroup(params: BsParams, w, d: int) -> Optional[int]:
    """``k`` with ``w == a^(d k)``, or None when ``w`` is not in ``<a^d>``."""
    if d < 1:
        raise ValueError("d must be positive")
    nf = normal_form(params, w)
    if nf.syllables or nf.z % d:
        return None
    return nf.z // d


def _conj_generators() -> Sequence[Word]:
    # a, a^-1, c = b^-1 a b, c^-1
    return (
        Word((Letter("a", 1),)),
        Word((Letter("a", -1),)),
        Word((Letter("b", -1), Letter("a", 1), Letter("b", 1))),
        Word((Letter("b", -1), Letter("a", -1), Letter("b", 1))),
    )


def conjugate_count(params: BsParams, gamma, length: int) -> int:
    """Number of distinct ``g gamma g^-1`` over ``g`` in the ball of radius
    ``length`` of ``G = <a, b^-1 a b>`` (word length in a, c = b^-1 a b)."""
    if length < 0:
        raise ValueError("length must be nonnegative")
    gamma = _as_word(gamma)
    gens = _conj_generators()
    seen = {NormalForm(0, ())}
    frontier = deque([NormalForm(0, ())])
    for _ in range(length):
        nxt = deque()
        for g in frontier:
            gw = g.to_word()
            for x in gens:
                h = normal_form(params, gw * x)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    conjugates = set()
    for g in seen:
        gw = g.to_word()
        conjugates.add(normal_form(params, gw * gamma * gw.inverse()))
    return len(conjugates)
