"""Single-wall jump formulas for rank-two invariants, by two independent
routes, plus the multicover transform and the full group-identity check.

An :class:`InvariantTable` holds rational counting invariants indexed by
charge: Higgs invariants ``H`` at framing rank zero (chamber independent) and
framed invariants at ranks one and two for one chamber.  Crossing a wall
``delta_c`` from above (``+`` side) to below (``-`` side):

* :func:`jump_v1` and :func:`jump_v2_js` evaluate the Joyce-Song style
  formulas -- weighted sums over the Harder-Narasimhan index sets of
  :mod:`localdt.hnconfig`, with ``1/(l-1)!`` symmetry factors, Higgs weights
  ``weight_f`` and pair weights ``weight_g``;

* :func:`jump_v2_ks` evaluates the Kontsevich-Soibelman recursion directly in
  ray coordinates: charges at the wall slope are indexed by multiples of the
  primitive Higgs direction, and the Higgs chains are resummed through a
  one-variable exponential.  It shares no enumeration code with the HN route.

Both produce identical rational jumps; :func:`verify_ks_group_identity`
checks the underlying identity of slope-ordered exponential products in the
truncated enveloping algebra, which is the common source of both formulas.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .charge import Charge, Geometry, weight_f, weight_g
from .hnconfig import enumerate_hn_minus
from .liealg import LieElement, TruncationBounds
from .uealg import UEAElement, exp_u, star


@dataclass
class InvariantTable:
    """Charge-indexed rational invariants for one chamber.

    ``chamber`` is a free-form tag (``'+'``, ``'-'``, ``'inf'``, ``'c'``, or a
    barred variant such as ``'+bar'``).  Missing entries read as zero.
    """

    geom: Geometry
    chamber: str = "+"
    entries: dict[Charge, Fraction] = field(default_factory=dict)

    def value(self, c) -> Fraction:
        return self.entries.get(Charge(*c), Fraction(0))

    def set(self, c, val) -> None:
        val = Fraction(val)
        c = Charge(*c)
        if val:
            self.entries[c] = val
        else:
            self.entries.pop(c, None)

    def h(self, alpha) -> Fraction:
        """Higgs invariant of the ``(r, e)`` pair ``alpha``."""
        return self.value(Charge(alpha[0], alpha[1], 0))

    def a(self, alpha, v: int) -> Fraction:
        """Framed invariant of ``alpha`` at framing rank ``v``."""
        return self.value(Charge(alpha[0], alpha[1], v))

    def copy(self, chamber: str | None = None) -> "InvariantTable":
        return InvariantTable(self.geom, chamber or self.chamber, dict(self.entries))


def _factorial_inv(n: int) -> Fraction:
    out = Fraction(1)
    for i in range(2, n + 1):
        out /= i
    return out


# ---------------------------------------------------------------------------
# Joyce-Song route: sums over HN index sets.
# ---------------------------------------------------------------------------

def jump_v1(alpha, delta_c, table_plus: InvariantTable) -> Fraction:
    """Rank-one invariant just below the wall.

    ``A_-(alpha, 1) = sum_l 1/(l-1)! sum_{HN_-(alpha,1,dc,l,l-1)}
    A_+(alpha_l, 1) * prod_{i<l} f_1(alpha_i) H(alpha_i)``.
    """
    geom = table_plus.geom
    r = alpha[0]
    total = Fraction(0)
    for l in range(1, r + 1):
        pref = _factorial_inv(l - 1)
        for seq in enumerate_hn_minus(alpha, 1, delta_c, l, l - 1):
            term = pref * table_plus.a(seq.parts[-1], 1)
            for part in seq.parts[:-1]:
                term *= weight_f(part, 1, geom) * table_plus.h(part)
            total += term
    return total


def jump_v2_js(alpha, delta_c, table_plus: InvariantTable) -> Fraction:
    """Rank-two invariant just below the wall, HN-sum form.

    Three contributions: Higgs chains acting on a rank-two invariant; Higgs
    chains acting on an ordered rank-one pair (weight ``-1/2 g``); and pairs
    of independently dressed rank-one invariants (weight ``+1/2 g``).
    """
    geom = table_plus.geom
    r = alpha[0]
    total = Fraction(0)

    for l in range(1, r + 1):
        pref = _factorial_inv(l - 1)
        for seq in enumerate_hn_minus(alpha, 2, delta_c, l, l - 1):
            term = pref * table_plus.a(seq.parts[-1], 2)
            for part in seq.parts[:-1]:
                term *= weight_f(part, 2, geom) * table_plus.h(part)
            total += term

    for l in range(1, r):
        pref = _factorial_inv(l - 1)
        for seq in enumerate_hn_minus(alpha, 2, delta_c, l + 1, l - 1):
            a_last, a_prev = seq.parts[-1], seq.parts[-2]
            term = (
                -Fraction(1, 2)
                * pref
                * weight_g(a_last, a_prev, geom)
                * table_plus.a(a_prev, 1)
                * table_plus.a(a_last, 1)
            )
            for part in seq.parts[:-2]:
                term *= weight_f(part, 2, geom) * table_plus.h(part)
            total += term

    for pair in enumerate_hn_minus(alpha, 2, delta_c, 2, 0):
        a1, a2 = pair.parts
        total += (
            Fraction(1, 2)
            * weight_g(a1, a2, geom)
            * jump_v1(a1, delta_c, table_plus)
            * jump_v1(a2, delta_c, table_plus)
        )

    return total


# ---------------------------------------------------------------------------
# Kontsevich-Soibelman route: ray coordinates and resummed Higgs chains.
# ---------------------------------------------------------------------------

def _higgs_direction(mu: Fraction) -> tuple[int, int]:
    """Primitive charge ``(r, e)`` of slope ``mu`` (smallest positive rank)."""
    return (mu.denominator, mu.numerator)


def _chain_weights(kmax: int, beta, v: int, table: InvariantTable) -> list[Fraction]:
    """``w[k] =`` sum over multisets of positive multiples ``q_i`` of the ray
    direction with ``sum q_i = k`` of ``prod f_v(q_i beta) H(q_i beta) / mult!``.

    Resummed as the coefficients of ``exp(sum_q f_v(q beta) H(q beta) x^q)``.
    """
    geom = table.geom
    c = [Fraction(0)] * (kmax + 1)
    for q in range(1, kmax + 1):
        bq = (q * beta[0], q * beta[1])
        hq = table.h(bq)
        if hq:
            c[q] = hq * weight_f(bq, v, geom)
    out = [Fraction(0)] * (kmax + 1)
    out[0] = Fraction(1)
    for k in range(1, kmax + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            if c[j]:
                acc += j * c[j] * out[k - j]
        out[k] = acc / k
    return out


def _rank_one_ray_points(mu: Fraction, delta_c: Fraction, r_hi: int, e_hi: int | None = None):
    """Integral ``(r, e)`` with ``(e + delta_c)/r = mu`` and ``1 <= r <= r_hi``."""
    points = []
    for r in range(1, r_hi + 1):
        e = r * mu - delta_c
        if e.denominator == 1 and (e_hi is None or 0 <= e <= e_hi):
            points.append((r, int(e)))
    return points


def jump_v2_ks(alpha, delta_c, table_plus: InvariantTable) -> Fraction:
    """Rank-two invariant just below the wall, ray-recursion form.

    Writes every charge at the wall slope as a rank-one/rank-two base point
    plus a multiple of the primitive Higgs direction and evaluates the
    factorization recursion; rank-one inputs from below the wall are expanded
    into chains over the plus-side table.  Walls whose ray carries no
    integral rank-one point simply lose the pair terms.
    """
    geom = table_plus.geom
    r, e = alpha
    delta_c = Fraction(delta_c)
    mu = Fraction(e + 2 * delta_c, 1) / r
    beta = _higgs_direction(mu)
    kmax = (r - 1) // beta[0]
    w2 = _chain_weights(kmax, beta, 2, table_plus)

    total = Fraction(0)
    for k in range(kmax + 1):
        if w2[k]:
            base = (r - k * beta[0], e - k * beta[1])
            total += w2[k] * table_plus.a(base, 2)

    ray1 = _rank_one_ray_points(mu, delta_c, r - 1)

    for i, x1 in enumerate(ray1):
        for x2 in ray1[:i]:
            rest_r = r - x1[0] - x2[0]
            rest_e = e - x1[1] - x2[1]
            if rest_r < 0 or rest_r % beta[0]:
                continue
            k = rest_r // beta[0]
            if k > kmax or rest_e != k * beta[1] or not w2[k]:
                continue
            total += (
                Fraction(1, 2)
                * weight_g(x1, x2, geom)
                * table_plus.a(x1, 1)
                * table_plus.a(x2, 1)
                * w2[k]
            )

    dressed = {}
    for y in ray1:
        ky = (y[0] - 1) // beta[0]
        w1 = _chain_weights(ky, beta, 1, table_plus)
        acc = Fraction(0)
        for k in range(ky + 1):
            if w1[k]:
                acc += w1[k] * table_plus.a((y[0] - k * beta[0], y[1] - k * beta[1]), 1)
        dressed[y] = acc

    for i, y1 in enumerate(ray1):
        for y2 in ray1[i + 1 :]:
            if y1[0] + y2[0] == r and y1[1] + y2[1] == e:
                total -= (
                    Fraction(1, 2) * weight_g(y1, y2, geom) * dressed[y1] * dressed[y2]
                )

    return total


# ---------------------------------------------------------------------------
# Multicover transform.
# ---------------------------------------------------------------------------

def _charge_divisors(c: Charge) -> list[int]:
    g = gcd(gcd(abs(c[0]), abs(c[1])), abs(c[2]))
    return [m for m in range(1, g + 1) if g % m == 0]


def multicover(table_bar: InvariantTable) -> InvariantTable:
    """Unbarred invariants ``A(c) = sum_{m | c} A_bar(c / m) / m**2``."""
    out = InvariantTable(table_bar.geom, table_bar.chamber.replace("bar", "") or "+")
    for c in table_bar.entries:
        acc = Fraction(0)
        for m in _charge_divisors(c):
            acc += Fraction(1, m * m) * table_bar.value(
                Charge(c[0] // m, c[1] // m, c[2] // m)
            )
        out.set(c, acc)
    return out


def multicover_invert(table: InvariantTable) -> InvariantTable:
    """Barred invariants recovering ``table`` under :func:`multicover`.

    Solved recursively: ``A_bar(c) = A(c) - sum_{m >= 2} A_bar(c/m) / m**2``.
    """
    out = InvariantTable(table.geom, table.chamber + "bar")
    memo: dict[Charge, Fraction] = {}

    def bar(c: Charge) -> Fraction:
        if c in memo:
            return memo[c]
        acc = table.value(c)
        for m in _charge_divisors(c):
            if m > 1:
                acc -= Fraction(1, m * m) * bar(Charge(c[0] // m, c[1] // m, c[2] // m))
        memo[c] = acc
        return acc

    for c in table.entries:
        out.set(c, bar(c))
    return out


def barred_rank2(table: InvariantTable, y) -> Fraction:
    """Barred rank-two value at ``y``: ``A(y,2) - A(y/2,1)/4`` when ``y`` is
    divisible by two, else ``A(y,2)`` (the full inversion at framing rank 2)."""
    val = table.a(y, 2)
    if y[0] % 2 == 0 and y[1] % 2 == 0:
        val -= Fraction(1, 4) * table.a((y[0] // 2, y[1] // 2), 1)
    return val


# ---------------------------------------------------------------------------
# The group identity in the truncated enveloping algebra.
# ---------------------------------------------------------------------------

def _ray_data(alpha, delta_c: Fraction, trunc: TruncationBounds):
    """Charges at the wall slope of ``(alpha, 2)`` within the bounds.

    Returns the primitive Higgs direction and the rank-one and rank-two ray
    points, sorted by increasing rank.  Raises if the ray leaves the charge
    cone, which the truncated algebra cannot host.
    """
    r, e = alpha
    mu = Fraction(e + 2 * delta_c, 1) / r
    beta = _higgs_direction(mu)
    if beta[1] < 0:
        raise ValueError(f"ray slope {mu} leaves the charge cone e >= 0")
    pts1 = []
    pts2 = []
    for rr in range(1, trunc.r_max + 1):
        e1 = rr * mu - delta_c
        if e1.denominator == 1 and 0 <= e1 <= trunc.e_max:
            pts1.append((rr, int(e1)))
        e2 = rr * mu - 2 * delta_c
        if e2.denominator == 1 and 0 <= e2 <= trunc.e_max:
            pts2.append((rr, int(e2)))
    return beta, pts1, pts2


def verify_ks_group_identity(
    alpha,
    delta_c,
    table_plus: InvariantTable,
    table_minus: InvariantTable,
    trunc: TruncationBounds,
) -> bool:
    """Exact check of the slope-ordered factorization identity at one wall.

    Plus-side factors (Higgs exponential first, then rank-two and rank-one
    factors in decreasing ray order) must multiply to the minus-side factors
    (rank-one and rank-two factors in increasing ray order, Higgs exponential
    last) inside the truncated enveloping algebra.  Rank-two exponents are
    the barred invariants; rank-one factors carry the ``1/4`` rank-two
    correction inside their exponential.
    """
    geom = table_plus.geom
    if table_minus.geom != geom:
        raise ValueError("tables must share a geometry")
    delta_c = Fraction(delta_c)
    beta, pts1, pts2 = _ray_data(alpha, delta_c, trunc)

    higgs = {}
    q = 1
    while q * beta[0] <= trunc.r_max and q * beta[1] <= trunc.e_max:
        hq = table_plus.h((q * beta[0], q * beta[1]))
        if hq:
            higgs[Charge(q * beta[0], q * beta[1], 0)] = hq
        q += 1
    exp_h = exp_u(UEAElement.from_lie(LieElement(higgs)), geom, trunc)

    def rank1_factor(table: InvariantTable, x) -> UEAElement:
        arg = {Charge(x[0], x[1], 1): Fraction(1)}
        double = Charge(2 * x[0], 2 * x[1], 2)
        if trunc.admits(double):
            arg[double] = Fraction(1, 4)
        return exp_u(
            UEAElement.from_lie(LieElement(arg)) * table.a(x, 1), geom, trunc
        )

    def rank2_factor(table: InvariantTable, y) -> UEAElement:
        coeff = barred_rank2(table, y)
        return exp_u(
            UEAElement.from_lie(LieElement({Charge(y[0], y[1], 2): Fraction(1)}))
            * coeff,
            geom,
            trunc,
        )

    lhs = exp_h
    for y in reversed(pts2):
        lhs = star(lhs, rank2_factor(table_plus, y), geom, trunc)
    for x in reversed(pts1):
        lhs = star(lhs, rank1_factor(table_plus, x), geom, trunc)

    rhs = UEAElement.one()
    for x in pts1:
        rhs = star(rhs, rank1_factor(table_minus, x), geom, trunc)
    for y in pts2:
        rhs = star(rhs, rank2_factor(table_minus, y), geom, trunc)
    rhs = star(rhs, exp_h, geom, trunc)

    return lhs == rhs


def minus_table(alpha, delta_c, table_plus: InvariantTable, trunc: TruncationBounds) -> InvariantTable:
    """Minus-chamber table at one wall: every ray point within the bounds gets
    its jumped value; Higgs entries are copied unchanged."""
    delta_c = Fraction(delta_c)
    out = table_plus.copy("-")
    _, pts1, pts2 = _ray_data(alpha, delta_c, trunc)
    for x in pts1:
        out.set(Charge(x[0], x[1], 1), jump_v1(x, delta_c, table_plus))
    for y in pts2:
        out.set(Charge(y[0], y[1], 2), jump_v2_js(y, delta_c, table_plus))
    return out
