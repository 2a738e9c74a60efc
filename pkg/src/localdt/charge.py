"""Charge lattice, curve geometry, and the scalar ingredients of wallcrossing.

Everything the engine counts is indexed by an integer charge triple
``(r, e, v)``: rank and degree of a sheaf on the curve, and the rank of its
framing (D2, D0 and D6 charges in physics terms).  This module fixes the
lattice conventions used by all other modules:

* the antisymmetric Euler pairing ``euler_pairing`` that furnishes the Lie
  bracket coefficients,
* slopes of charges with respect to a rational stability parameter,
* the integer weights ``weight_f`` / ``weight_g`` multiplying Higgs factors
  and framed pairs in the jump formulas,
* charge duality.

All arithmetic is exact.  Stability parameters are rational numbers
(`fractions.Fraction`); there is no floating point anywhere in the engine.
Walls are solutions of linear equations with integer coefficients, so nothing
is lost by restricting to exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

#: Exact rational stability parameter.  Plain ints are accepted everywhere a
#: stability parameter is expected and are coerced with ``Fraction``.
StabilityParam = Fraction


class Charge(NamedTuple):
    """Integer charge triple ``(r, e, v)``.

    ``r`` is the sheaf rank, ``e`` the degree, ``v`` the framing rank.  The
    engine only ever populates the cone ``r >= 0`` with ``v`` in ``{0, 1, 2}``;
    ``v = 0`` charges are Higgs charges and require ``r >= 1``, while
    ``(0, 0, 1)`` and ``(0, 0, 2)`` are the pure-framing charges.

    Addition, subtraction and integer scaling act componentwise (they
    intentionally shadow tuple concatenation/repetition).
    """

    r: int
    e: int
    v: int

    @property
    def alpha(self) -> tuple[int, int]:
        """The framing-suppressed part ``(r, e)``."""
        return (self.r, self.e)

    def __add__(self, other):
        return Charge(self.r + other[0], self.e + other[1], self.v + other[2])

    def __sub__(self, other):
        return Charge(self.r - other[0], self.e - other[1], self.v - other[2])

    def __mul__(self, k: int):
        return Charge(self.r * k, self.e * k, self.v * k)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return f"({self.r},{self.e},{self.v})"


def charge(r: int, e: int, v: int) -> Charge:
    """Build a :class:`Charge`, checking the generator conventions.

    Raises ``ValueError`` for charges the engine never indexes: negative rank,
    framing rank outside ``{0, 1, 2}``, the zero charge, or rank-zero Higgs
    charges.
    """
    c = Charge(r, e, v)
    if not is_generator(c):
        raise ValueError(f"invalid generator charge {c}")
    return c


def is_generator(c: Charge) -> bool:
    """True if ``c`` may index a generator or an invariant: positive rank, or
    one of the pure-framing charges ``(0, 0, 1)`` and ``(0, 0, 2)``."""
    r, e, v = c
    if v < 0 or v > 2:
        return False
    if r >= 1:
        return True
    return r == 0 and e == 0 and v >= 1


@dataclass(frozen=True)
class Geometry:
    """Curve genus and the degrees of the two twisting line bundles.

    The twisting pair must multiply to the anticanonical bundle, which pins
    ``d1 + d2 = 2 - 2 * genus``.
    """

    genus: int
    d1: int
    d2: int

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise ValueError(f"genus must be non-negative, got {self.genus}")
        if self.d1 + self.d2 != 2 - 2 * self.genus:
            raise ValueError(
                f"twisting degrees ({self.d1},{self.d2}) incompatible with "
                f"genus {self.genus}: need d1 + d2 = {2 - 2 * self.genus}"
            )

    @property
    def gm1(self) -> int:
        """genus - 1, the combination entering every weight."""
        return self.genus - 1


#: Twisting pairs admitted in genus-0 local-curve mode.
LOCAL_CURVE_PAIRS = ((1, 1), (0, 2))


def local_curve(d1: int) -> Geometry:
    """Genus-0 geometry with twisting degrees ``(d1, 2 - d1)``.

    Only ``d1 = 1`` (the resolved conifold case) and ``d1 = 0`` are supported
    by the closed-form generating functions.
    """
    if (d1, 2 - d1) not in LOCAL_CURVE_PAIRS:
        raise ValueError(f"local-curve mode requires d1 in {{0, 1}}, got {d1}")
    return Geometry(genus=0, d1=d1, d2=2 - d1)


def signed(m: int) -> int:
    """``(-1)**m * m`` with an exact parity rule (valid for negative m)."""
    return -m if m % 2 else m


def euler_pairing(g1: Charge, g2: Charge, geom: Geometry) -> int:
    """Antisymmetric Euler pairing of two charges.

    ``chi(g1, g2) = v2*e1 - v1*e2 - (v2*r1 - v1*r2) * (genus - 1)``.

    The Higgs sector pairs to zero (every term carries a framing rank), and
    ``chi(a, b) = -chi(b, a)`` identically.
    """
    r1, e1, v1 = g1
    r2, e2, v2 = g2
    return v2 * e1 - v1 * e2 - (v2 * r1 - v1 * r2) * geom.gm1


def delta_slope(c: Charge, delta: StabilityParam | int) -> Fraction:
    """Slope ``(e + delta * v) / r`` of a charge at stability parameter delta.

    Undefined for rank-zero charges.
    """
    r, e, v = c
    if r < 1:
        raise ValueError(f"slope undefined for rank-zero charge {Charge(*c)}")
    return (Fraction(delta) * v + e) / r


def weight_f(alpha, v: int, geom: Geometry) -> int:
    """Higgs weight ``(-1)**(v*m) * v * m`` with ``m = e - r*(genus-1)``.

    ``alpha`` is a Higgs charge, given as an ``(r, e)`` pair (a full charge
    triple is accepted; its framing entry is ignored).  ``v`` in ``{1, 2}`` is
    the framing rank of the sector the Higgs factor acts on.
    """
    if v not in (1, 2):
        raise ValueError(f"weight_f defined for v in {{1, 2}}, got {v}")
    m = alpha[1] - alpha[0] * geom.gm1
    return signed(v * m)


def weight_g(a1, a2, geom: Geometry) -> int:
    """Pair weight ``(-1)**m * m`` with ``m = e1 - e2 - (r1 - r2)*(genus-1)``.

    Antisymmetric in its two ``(r, e)`` arguments; equals the signed Euler
    pairing of the corresponding rank-one framed charges.
    """
    m = a1[1] - a2[1] - (a1[0] - a2[0]) * geom.gm1
    return signed(m)


def dual_charge(c: Charge, geom: Geometry) -> Charge:
    """Charge of the dual object: ``(r, -e + 2*r*(genus-1), v)``.

    An involution; exchanges stability at ``delta`` with stability at
    ``-delta``.
    """
    r, e, v = c
    return Charge(r, -e + 2 * r * geom.gm1, v)
