"""Harder-Narasimhan index sets and critical stability parameters.

The jump formulas sum over finite sets of ordered charge decompositions with
exact slope constraints.  Two families are enumerated here:

* *admissible configurations* of a rank pair ``(r, v)``: ordered splittings
  into parts ``(r_i, v_i)`` whose framing-per-rank ratios strictly decrease
  (positive side) or increase (negative side), with every partial ratio on
  the corresponding side of ``v / r``;

* the *negative HN sets* ``HN_-(alpha, v, delta_c, l, k)`` of a Higgs charge
  ``alpha = (r, e)`` at a wall ``delta_c``: ordered splittings into ``l``
  parts of positive rank, the first ``k`` of which are Higgs parts sitting at
  the common wall slope and the rest framed parts.  Only the shapes
  ``k = l - 1`` (one framed part of rank ``v``) and, for ``v = 2``,
  ``k = l - 2`` (two framed parts of rank one with strictly decreasing rank)
  enter the rank-two jump formulas.

Parts are always determined exactly: fixing the rank composition forces every
degree through the slope equalities, so enumeration reduces to integrality
checks.  Walls of a charge are the positive rationals at which at least one
of these sets with two or more parts is non-empty.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, NamedTuple

from .charge import Charge

Part = tuple[int, int]


class HNSequence(NamedTuple):
    """One ordered decomposition together with the set it belongs to.

    ``kind`` is ``('+',)`` or ``('-',)`` for admissible configurations, in
    which case ``parts`` are ``(r_i, v_i)`` pairs, and ``('-', l, k)`` for the
    slope sets, in which case ``parts`` are ``(r_i, e_i)`` pairs.
    """

    parts: tuple[Part, ...]
    kind: tuple

    def __str__(self) -> str:
        body = ",".join(f"({a},{b})" for a, b in self.parts)
        return f"[{body}]@{self.kind}"


class WallSet(NamedTuple):
    """Sorted positive walls of a charge, with the search window used."""

    walls: tuple[Fraction, ...]
    target: Charge
    window: tuple[int, int]
    nonneg: bool


def _compositions(total: int, parts: int, minimum: int) -> Iterator[tuple[int, ...]]:
    """Ordered compositions of ``total`` into ``parts`` parts ``>= minimum``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= minimum:
            yield (total,)
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, minimum):
            yield (first,) + rest


def enumerate_admissible(r: int, v: int, sign: str) -> list[HNSequence]:
    """All admissible configurations of type ``(r, v)`` on the given side.

    ``sign`` is ``'+'`` or ``'-'``.  Parts are ``(r_i, v_i)`` with
    ``r_i >= 1`` and ``v_i >= 0`` summing to ``(r, v)``.  For ``'+'`` every
    partial ratio ``(v_1 + .. + v_i) / (r_1 + .. + r_i)`` strictly exceeds
    ``v / r`` and the ratios ``v_i / r_i`` strictly decrease; for ``'-'``
    both conditions are reversed.  The one-part sequence is always admissible.
    """
    if sign not in ("+", "-"):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    if r < 1 or v < 1:
        raise ValueError(f"admissible configurations need r, v >= 1, got ({r},{v})")
    target = Fraction(v, r)
    found = []
    for h in range(1, r + 1):
        for rparts in _compositions(r, h, 1):
            for vparts in _compositions(v, h, 0):
                if not _admissible_ok(rparts, vparts, target, sign):
                    continue
                parts = tuple(zip(rparts, vparts))
                found.append(HNSequence(parts, (sign,)))
    found.sort()
    return found


def _admissible_ok(rparts, vparts, target: Fraction, sign: str) -> bool:
    h = len(rparts)
    pr, pv = 0, 0
    for i in range(h - 1):
        pr += rparts[i]
        pv += vparts[i]
        partial = Fraction(pv, pr)
        if sign == "+" and not partial > target:
            return False
        if sign == "-" and not partial < target:
            return False
        left = Fraction(vparts[i], rparts[i])
        right = Fraction(vparts[i + 1], rparts[i + 1])
        if sign == "+" and not left > right:
            return False
        if sign == "-" and not left < right:
            return False
    return True


def enumerate_hn_minus(
    alpha: Part,
    v: int,
    delta_c,
    l: int,
    k: int,
    nonneg: bool = False,
) -> list[HNSequence]:
    """The set ``HN_-(alpha, v, delta_c, l, k)`` as a sorted list.

    Supported shapes: ``k = l - 1`` with ``v`` in ``{1, 2}`` (parts
    ``1 .. l-1`` are Higgs parts at the wall slope, the last part carries the
    full framing), and ``k = l - 2`` with ``v = 2`` and ``l >= 2`` (parts
    ``l-1`` and ``l`` carry framing rank one each and satisfy
    ``r_{l-1} > r_l``).  Any other ``(l, k)`` is a usage error.

    With ``nonneg`` set, sequences containing a negative part degree are
    dropped (the genus-0 regime, where such objects do not exist).
    """
    r, e = alpha
    if r < 1:
        raise ValueError(f"HN sets need rank >= 1, got alpha = {alpha}")
    if v not in (1, 2):
        raise ValueError(f"HN sets defined for v in {{1, 2}}, got {v}")
    if l < 1:
        raise ValueError(f"need l >= 1, got {l}")
    delta_c = Fraction(delta_c)
    if k == l - 1:
        two_framed = False
    elif k == l - 2 and v == 2 and l >= 2:
        two_framed = True
    else:
        raise ValueError(f"unsupported HN shape (l, k) = ({l}, {k}) for v = {v}")

    mu = Fraction(e + v * delta_c, 1) / r
    found = []
    for rparts in _compositions(r, l, 1):
        parts = _solve_degrees(rparts, e, mu, delta_c, two_framed)
        if parts is None:
            continue
        if two_framed and not parts[-2][0] > parts[-1][0]:
            continue
        if nonneg and any(ei < 0 for _, ei in parts):
            continue
        found.append(HNSequence(parts, ("-", l, k)))
    found.sort()
    return found


def _solve_degrees(rparts, e, mu, delta_c, two_framed):
    """Degrees forced by the slope equalities, or None if non-integral.

    Higgs parts must satisfy ``e_i / r_i = mu``; framed parts of rank one in
    the framing ``(e_i + delta_c) / r_i = mu``.  The degree of the last part
    is fixed by the total, which automatically places it on its slope.
    """
    l = len(rparts)
    degrees = []
    higgs_count = l - 2 if two_framed else l - 1
    for i in range(higgs_count):
        d = rparts[i] * mu
        if d.denominator != 1:
            return None
        degrees.append(int(d))
    if two_framed:
        d = rparts[l - 2] * mu - delta_c
        if d.denominator != 1:
            return None
        degrees.append(int(d))
    degrees.append(e - sum(degrees))
    return tuple(zip(rparts, degrees))


def enumerate_walls(
    alpha: Part,
    v: int,
    window: tuple[int, int] | None = None,
    nonneg: bool = False,
) -> WallSet:
    """Positive critical stability parameters of type ``(alpha, v)``.

    Wall candidates solve ``r * e1 = r1 * (e + v * delta)`` for a part
    ``(r1, e1)`` with ``1 <= r1 < r`` and ``e1`` in the degree ``window``;
    each candidate is kept only if it admits a non-empty HN set with at least
    two parts (a witness).  With ``nonneg`` and no explicit window the window
    defaults to ``[0, max(e, 0)]``, which is exhaustive in that regime: every
    positive wall has a witness whose slope is realised by an in-window pair.
    Without ``nonneg`` a window must be supplied.
    """
    r, e = alpha
    if r < 1:
        raise ValueError(f"walls defined for rank >= 1, got alpha = {alpha}")
    if v not in (1, 2):
        raise ValueError(f"walls defined for v in {{1, 2}}, got {v}")
    if window is None:
        if not nonneg:
            raise ValueError("general-mode wall enumeration needs an explicit degree window")
        window = (0, max(e, 0))
    lo, hi = window

    candidates = set()
    for r1 in range(1, r):
        for e1 in range(lo, hi + 1):
            dc = Fraction(r * e1 - r1 * e, v * r1)
            if dc > 0:
                candidates.add(dc)

    walls = tuple(dc for dc in sorted(candidates) if _has_witness(alpha, v, dc, nonneg))
    return WallSet(walls, Charge(r, e, v), (lo, hi), nonneg)


def _has_witness(alpha: Part, v: int, delta_c: Fraction, nonneg: bool) -> bool:
    r = alpha[0]
    for l in range(2, r + 1):
        if enumerate_hn_minus(alpha, v, delta_c, l, l - 1, nonneg):
            return True
        if v == 2 and enumerate_hn_minus(alpha, v, delta_c, l, l - 2, nonneg):
            return True
    return False


def validate_sequence(seq: HNSequence, target: Charge, delta_c=None) -> bool:
    """Exact re-check of the defining conditions of ``seq.kind``.

    ``target`` is the full charge ``(r, e, v)``; admissible kinds test
    against ``(r, v)``, slope kinds against ``(r, e)`` with the framing rank
    of the target and the supplied wall.
    """
    if not seq.parts:
        return False
    kind = seq.kind
    if kind in (("+",), ("-",)):
        return _validate_admissible(seq.parts, target, kind[0])
    if len(kind) == 3 and kind[0] == "-":
        if delta_c is None:
            raise ValueError("slope-kind sequences need the wall delta_c")
        return _validate_slopes(seq.parts, target, Fraction(delta_c), kind[1], kind[2])
    raise ValueError(f"unknown sequence kind {kind!r}")


def _validate_admissible(parts, target: Charge, sign: str) -> bool:
    r, v = target.r, target.v
    if any(ri < 1 or vi < 0 for ri, vi in parts):
        return False
    if sum(p[0] for p in parts) != r or sum(p[1] for p in parts) != v:
        return False
    return _admissible_ok(
        tuple(p[0] for p in parts), tuple(p[1] for p in parts), Fraction(v, r), sign
    )


def _validate_slopes(parts, target: Charge, delta_c: Fraction, l: int, k: int) -> bool:
    r, e, v = target
    if len(parts) != l or not (k == l - 1 or (k == l - 2 and v == 2)):
        return False
    if any(ri < 1 for ri, _ in parts):
        return False
    if sum(p[0] for p in parts) != r or sum(p[1] for p in parts) != e:
        return False
    mu = Fraction(e + v * delta_c, 1) / r
    for i, (ri, ei) in enumerate(parts):
        if i < k:
            if Fraction(ei, ri) != mu:
                return False
        else:
            vi = v if k == l - 1 else 1
            if (ei + vi * delta_c) / ri != mu:
                return False
    if k == l - 2 and not parts[-2][0] > parts[-1][0]:
        return False
    return True
