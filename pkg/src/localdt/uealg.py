"""Truncated universal enveloping algebra: PBW normal form, star product,
exponentials and logarithms, ordered ray products.

Elements are rational combinations of PBW words -- ordered monomials in the
charge generators, sorted by the fixed generator order ``(v, r, e)`` -- with
the empty word as scalar part.  The associative product straightens out-of-
order adjacent pairs with ``x * y = y * x + [x, y]`` until normal form is
reached.

Truncation drops whole words whose total rank, degree or framing rank exceeds
the bounds.  All charges live in the cone ``r, e >= 0`` and a word's totals
dominate those of every subword, so the dropped span is a two-sided ideal:
the product stays associative, and group identities checked after truncation
are faithful to the untruncated ones (both sides are exponentials of Lie
elements, which truncation never conflates).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .charge import Charge, Geometry
from .liealg import LieElement, TruncationBounds, _check_cone, bracket_charges

Word = tuple[Charge, ...]


def pbw_key(c: Charge):
    """Generator order: framing rank, then rank, then degree."""
    return (c[2], c[0], c[1])


def sort_word(charges: Iterable[Charge]) -> Word:
    return tuple(sorted(charges, key=pbw_key))


def word_totals(word: Word) -> Charge:
    r = e = v = 0
    for c in word:
        r += c[0]
        e += c[1]
        v += c[2]
    return Charge(r, e, v)


class UEAElement:
    """Sparse rational combination of PBW words (the empty word is the scalar)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict | None = None):
        clean: dict[Word, Fraction] = {}
        for w, a in (terms or {}).items():
            a = Fraction(a)
            if not a:
                continue
            w = tuple(Charge(*c) for c in w)
            for c in w:
                _check_cone(c)
            if sort_word(w) != w:
                raise ValueError(f"word {w} is not in PBW normal form")
            clean[w] = a
        self._terms = clean

    @classmethod
    def _make(cls, clean: dict) -> "UEAElement":
        out = object.__new__(cls)
        out._terms = clean
        return out

    @classmethod
    def zero(cls) -> "UEAElement":
        return cls._make({})

    @classmethod
    def one(cls) -> "UEAElement":
        return cls.scalar(1)

    @classmethod
    def scalar(cls, a) -> "UEAElement":
        a = Fraction(a)
        return cls._make({(): a} if a else {})

    @classmethod
    def from_lie(cls, x: LieElement) -> "UEAElement":
        return cls._make({(c,): a for c, a in x.items()})

    @property
    def scalar_part(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def coefficient(self, word) -> Fraction:
        return self._terms.get(tuple(Charge(*c) for c in word), Fraction(0))

    def items(self):
        return self._terms.items()

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, UEAElement) and self._terms == other._terms

    def __add__(self, other: "UEAElement") -> "UEAElement":
        out = dict(self._terms)
        for w, a in other._terms.items():
            s = out.get(w, Fraction(0)) + a
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return UEAElement._make(out)

    def __sub__(self, other: "UEAElement") -> "UEAElement":
        return self + (-other)

    def __neg__(self) -> "UEAElement":
        return UEAElement._make({w: -a for w, a in self._terms.items()})

    def __mul__(self, scalar) -> "UEAElement":
        scalar = Fraction(scalar)
        if not scalar:
            return UEAElement.zero()
        return UEAElement._make({w: a * scalar for w, a in self._terms.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if not self._terms:
            return "UEAElement(0)"
        bits = []
        for w, a in sorted(self._terms.items()):
            mono = "*".join(f"x{c}" for c in w) if w else "1"
            bits.append(f"{a}*{mono}")
        return "UEAElement(" + " + ".join(bits) + ")"


@lru_cache(maxsize=None)
def _word_star(w1: Word, w2: Word, geom: Geometry, trunc: TruncationBounds):
    """Normal form of the concatenation ``w1 w2`` as ``((word, coeff), ...)``.

    The whole product is dropped when the combined totals leave the bounds;
    inside an admitted word no individual bracket can overflow, so
    straightening needs no further truncation checks.
    """
    totals = word_totals(w1 + w2)
    if not trunc.admits(totals):
        return ()
    out: dict[Word, Fraction] = {}
    stack: list[tuple[Word, Fraction]] = [(w1 + w2, Fraction(1))]
    while stack:
        w, coeff = stack.pop()
        i = _first_inversion(w)
        if i is None:
            s = out.get(w, Fraction(0)) + coeff
            if s:
                out[w] = s
            else:
                out.pop(w, None)
            continue
        stack.append((w[:i] + (w[i + 1], w[i]) + w[i + 2 :], coeff))
        hit = bracket_charges(w[i], w[i + 1], geom, trunc)
        if hit is not None:
            bc, bch = hit
            stack.append((w[:i] + (bch,) + w[i + 2 :], coeff * bc))
    return tuple(sorted(out.items()))


def _first_inversion(w: Word):
    for i in range(len(w) - 1):
        if pbw_key(w[i]) > pbw_key(w[i + 1]):
            return i
    return None


def star(x: UEAElement, y: UEAElement, geom: Geometry, trunc: TruncationBounds) -> UEAElement:
    """Associative product in PBW normal form under truncation."""
    out: dict[Word, Fraction] = {}
    for w1, a1 in x.items():
        for w2, a2 in y.items():
            a12 = a1 * a2
            for w, c in _word_star(w1, w2, geom, trunc):
                s = out.get(w, Fraction(0)) + a12 * c
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
    return UEAElement._make(out)


def exp_u(x: UEAElement, geom: Geometry, trunc: TruncationBounds) -> UEAElement:
    """``sum_k x^k / k!``; requires zero scalar part.

    Nilpotency is automatic: every word of ``x`` carries positive total
    charge, so powers die once the totals overflow the bounds.
    """
    if x.scalar_part:
        raise ValueError("exp_u needs an argument with zero scalar part")
    total = UEAElement.one() + x
    power = x
    k = 1
    while power:
        k += 1
        power = star(power, x, geom, trunc) * Fraction(1, k)
        total = total + power
    return total


def log_u(x: UEAElement, geom: Geometry, trunc: TruncationBounds) -> UEAElement:
    """``sum_k (-1)^(k+1) (x - 1)^k / k``; requires scalar part exactly one."""
    if x.scalar_part != 1:
        raise ValueError("log_u needs an argument with scalar part 1")
    y = x - UEAElement.one()
    total = y
    power = y
    k = 1
    while power:
        k += 1
        power = star(power, y, geom, trunc)
        total = total + power * Fraction((-1) ** (k + 1), k)
    return total


def lie_coefficients(x: UEAElement) -> LieElement:
    """Projection onto length-one words (the Lie part of a logarithm)."""
    return LieElement._make({w[0]: a for w, a in x.items() if len(w) == 1})


def ordered_ray_product(
    factors: Sequence[tuple], geom: Geometry, trunc: TruncationBounds
) -> UEAElement:
    """Left-to-right star product of ``exp_u(exponent * argument)`` factors.

    ``factors`` is a sequence of ``(exponent, argument)`` pairs with rational
    exponents and UEA (or Lie) arguments; the caller supplies the slope order.
    """
    total = UEAElement.one()
    for exponent, argument in factors:
        if isinstance(argument, LieElement):
            argument = UEAElement.from_lie(argument)
        factor = exp_u(argument * Fraction(exponent), geom, trunc)
        total = star(total, factor, geom, trunc)
    return total
