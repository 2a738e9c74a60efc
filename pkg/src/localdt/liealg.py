"""The truncated charge Lie algebra: sparse elements, bracket, adjoint series.

The algebra is spanned over the rationals by one generator per charge, with

    [x_a, x_b] = (-1)**chi(a, b) * chi(a, b) * x_(a + b)

and the bracket declared zero whenever the framing ranks add up beyond two.
Elements are finite rational linear combinations, stored sparsely.

Finiteness comes from a rank/degree truncation: charges are confined to the
cone ``r >= 0, e >= 0`` bounded by :class:`TruncationBounds`, and any bracket
landing outside the bounds is dropped.  Inside the cone every product of
charges dominates its factors componentwise, so the dropped span is a Lie
ideal and all identities (antisymmetry, Jacobi) survive truncation exactly.
Computations with negative degrees must be re-shifted into the cone by the
caller; elements reject out-of-cone charges outright.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple

from .charge import Charge, Geometry, euler_pairing, is_generator, signed


class TruncationBounds(NamedTuple):
    """Componentwise charge bounds: keep ``0 <= r <= r_max``, ``0 <= e <= e_max``,
    ``0 <= v <= v_max``."""

    r_max: int
    e_max: int
    v_max: int = 2

    def admits(self, c: Charge) -> bool:
        return (
            0 <= c[0] <= self.r_max
            and 0 <= c[1] <= self.e_max
            and 0 <= c[2] <= self.v_max
        )


def _check_cone(c: Charge) -> Charge:
    if c[0] < 0 or c[1] < 0:
        raise ValueError(f"charge {Charge(*c)} lies outside the supported cone r, e >= 0")
    if not is_generator(Charge(*c)):
        raise ValueError(f"charge {Charge(*c)} is not a valid generator")
    return Charge(*c)


class LieElement:
    """Finite rational combination of charge generators.

    Immutable in use: all operations return fresh elements.  Supports ``+``,
    ``-``, scalar multiplication, equality, truthiness (zero is falsy) and
    read access via ``coefficient``/``items``.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict | None = None):
        clean: dict[Charge, Fraction] = {}
        for c, a in (terms or {}).items():
            a = Fraction(a)
            if a:
                clean[_check_cone(c)] = a
        self._terms = clean

    @classmethod
    def _make(cls, clean: dict) -> "LieElement":
        out = object.__new__(cls)
        out._terms = clean
        return out

    @classmethod
    def zero(cls) -> "LieElement":
        return cls._make({})

    @classmethod
    def generator(cls, c, coeff=1) -> "LieElement":
        coeff = Fraction(coeff)
        if not coeff:
            return cls.zero()
        return cls._make({_check_cone(c): coeff})

    def coefficient(self, c) -> Fraction:
        return self._terms.get(Charge(*c), Fraction(0))

    def items(self):
        return self._terms.items()

    def charges(self):
        return self._terms.keys()

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, LieElement) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "LieElement") -> "LieElement":
        out = dict(self._terms)
        for c, a in other._terms.items():
            s = out.get(c, Fraction(0)) + a
            if s:
                out[c] = s
            else:
                out.pop(c, None)
        return LieElement._make(out)

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __neg__(self) -> "LieElement":
        return LieElement._make({c: -a for c, a in self._terms.items()})

    def __mul__(self, scalar) -> "LieElement":
        scalar = Fraction(scalar)
        if not scalar:
            return LieElement.zero()
        return LieElement._make({c: a * scalar for c, a in self._terms.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        if not self._terms:
            return "LieElement(0)"
        body = " + ".join(
            f"{a}*x{c}" for c, a in sorted(self._terms.items())
        )
        return f"LieElement({body})"


def gen(r: int, e: int, v: int, coeff=1) -> LieElement:
    """Shorthand for a single scaled generator."""
    return LieElement.generator(Charge(r, e, v), coeff)


def truncate(x: LieElement, trunc: TruncationBounds) -> LieElement:
    return LieElement._make({c: a for c, a in x.items() if trunc.admits(c)})


def bracket_charges(c1: Charge, c2: Charge, geom: Geometry, trunc: TruncationBounds):
    """Coefficient and charge of ``[x_c1, x_c2]``, or ``None`` if it dies.

    Dies when the framing ranks overflow ``v_max``, when the pairing
    vanishes, or when the summed charge leaves the bounds.
    """
    if c1[2] + c2[2] > trunc.v_max:
        return None
    chi = euler_pairing(c1, c2, geom)
    if chi == 0:
        return None
    c = Charge(c1[0] + c2[0], c1[1] + c2[1], c1[2] + c2[2])
    if not trunc.admits(c):
        return None
    return signed(chi), c


def bracket(x: LieElement, y: LieElement, geom: Geometry, trunc: TruncationBounds) -> LieElement:
    """Bilinear extension of the generator bracket under truncation."""
    out: dict[Charge, Fraction] = {}
    for c1, a1 in x.items():
        for c2, a2 in y.items():
            hit = bracket_charges(c1, c2, geom, trunc)
            if hit is None:
                continue
            coeff, c = hit
            s = out.get(c, Fraction(0)) + a1 * a2 * coeff
            if s:
                out[c] = s
            else:
                out.pop(c, None)
    return LieElement._make(out)


def ad_power_series(
    a: LieElement, b: LieElement, geom: Geometry, trunc: TruncationBounds
) -> LieElement:
    """``sum_{j>=0} ad(a)^j b / j!`` -- the Lie-algebra form of conjugation by
    ``exp(a)``.

    Requires every charge of ``a`` to have positive rank or positive degree,
    so each application of ``ad(a)`` strictly grows charges and the series
    terminates under the truncation.
    """
    for c in a.charges():
        if c[0] < 1 and c[1] < 1:
            raise ValueError(
                f"adjoint series does not terminate: {c} grows neither rank nor degree"
            )
    term = truncate(b, trunc)
    total = term
    j = 1
    while term:
        term = bracket(a, term, geom, trunc) * Fraction(1, j)
        total = total + term
        j += 1
    return total


def lie_sum(elements: Iterable[LieElement]) -> LieElement:
    total = LieElement.zero()
    for x in elements:
        total = total + x
    return total
