"""Truncated bivariate power series in (u, q) over exact rationals.

Supports the ring operations, log/exp of unit-constant series, and truncated
evaluation of products ``prod (1 - monomial)^exponent`` with integer (possibly
negative) exponents.  Truncation keeps per-variable degrees up to the caps;
factors whose monomial already exceeds the caps cannot contribute and are
skipped.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

Degree = tuple[int, int]


class BiSeries:
    """Sparse series ``sum c[(du, dq)] u^du q^dq`` with per-variable caps."""

    __slots__ = ("caps", "_terms")

    def __init__(self, caps: Degree, terms: dict | None = None):
        u_max, q_max = caps
        if u_max < 0 or q_max < 0:
            raise ValueError(f"caps must be non-negative, got {caps}")
        self.caps = (u_max, q_max)
        clean: dict[Degree, Fraction] = {}
        for (du, dq), a in (terms or {}).items():
            a = Fraction(a)
            if a and du <= u_max and dq <= q_max:
                if du < 0 or dq < 0:
                    raise ValueError(f"negative degree ({du},{dq})")
                clean[(du, dq)] = a
        self._terms = clean

    @classmethod
    def _make(cls, caps: Degree, clean: dict) -> "BiSeries":
        out = object.__new__(cls)
        out.caps = caps
        out._terms = clean
        return out

    @classmethod
    def zero(cls, caps: Degree) -> "BiSeries":
        return cls._make(caps, {})

    @classmethod
    def one(cls, caps: Degree) -> "BiSeries":
        return cls._make(caps, {(0, 0): Fraction(1)})

    @classmethod
    def monomial(cls, caps: Degree, du: int, dq: int, coeff=1) -> "BiSeries":
        return cls(caps, {(du, dq): coeff})

    def coefficient(self, degree: Degree) -> Fraction:
        return self._terms.get(tuple(degree), Fraction(0))

    def items(self):
        return self._terms.items()

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BiSeries)
            and self.caps == other.caps
            and self._terms == other._terms
        )

    def _match(self, other: "BiSeries") -> None:
        if self.caps != other.caps:
            raise ValueError(f"cap mismatch: {self.caps} vs {other.caps}")

    def __add__(self, other: "BiSeries") -> "BiSeries":
        self._match(other)
        out = dict(self._terms)
        for d, a in other._terms.items():
            s = out.get(d, Fraction(0)) + a
            if s:
                out[d] = s
            else:
                out.pop(d, None)
        return BiSeries._make(self.caps, out)

    def __sub__(self, other: "BiSeries") -> "BiSeries":
        return self + (-other)

    def __neg__(self) -> "BiSeries":
        return BiSeries._make(self.caps, {d: -a for d, a in self._terms.items()})

    def scale(self, scalar) -> "BiSeries":
        scalar = Fraction(scalar)
        if not scalar:
            return BiSeries.zero(self.caps)
        return BiSeries._make(self.caps, {d: a * scalar for d, a in self._terms.items()})

    def __mul__(self, other: "BiSeries") -> "BiSeries":
        self._match(other)
        u_max, q_max = self.caps
        out: dict[Degree, Fraction] = {}
        for (u1, q1), a1 in self._terms.items():
            for (u2, q2), a2 in other._terms.items():
                du, dq = u1 + u2, q1 + q2
                if du > u_max or dq > q_max:
                    continue
                d = (du, dq)
                s = out.get(d, Fraction(0)) + a1 * a2
                if s:
                    out[d] = s
                else:
                    out.pop(d, None)
        return BiSeries._make(self.caps, out)

    def int_pow(self, n: int) -> "BiSeries":
        if n < 0:
            raise ValueError("int_pow takes non-negative exponents; use ps_product_formula")
        result = BiSeries.one(self.caps)
        for _ in range(n):
            result = result * self
        return result

    def __repr__(self) -> str:
        if not self._terms:
            return "BiSeries(0)"
        bits = [f"{a}*u^{du}*q^{dq}" for (du, dq), a in sorted(self._terms.items())]
        return "BiSeries(" + " + ".join(bits) + ")"

    def to_jsonable(self) -> dict:
        """JSON shape shared with the command-line surface."""
        return {
            "caps": {"u": self.caps[0], "q": self.caps[1]},
            "terms": [
                {"u": du, "q": dq, "value": str(a)}
                for (du, dq), a in sorted(self._terms.items())
            ],
        }


def ps_log(f: BiSeries) -> BiSeries:
    """Logarithm of a series with constant term one."""
    if f.coefficient((0, 0)) != 1:
        raise ValueError("ps_log needs constant term 1")
    x = f - BiSeries.one(f.caps)
    total = BiSeries.zero(f.caps)
    power = BiSeries.one(f.caps)
    k = 0
    while True:
        k += 1
        power = power * x
        if not power:
            break
        total = total + power.scale(Fraction((-1) ** (k + 1), k))
    return total


def ps_exp(f: BiSeries) -> BiSeries:
    """Exponential of a series with constant term zero."""
    if f.coefficient((0, 0)) != 0:
        raise ValueError("ps_exp needs constant term 0")
    total = BiSeries.one(f.caps)
    power = BiSeries.one(f.caps)
    k = 0
    while True:
        k += 1
        power = (power * f).scale(Fraction(1, k))
        if not power:
            break
        total = total + power
    return total


def ps_product_formula(
    factors: Iterable[tuple[int, Degree, object]], caps: Degree
) -> BiSeries:
    """Truncated ``prod (1 - coeff * u^du q^dq) ** exponent``.

    ``factors`` yields ``(exponent, (du, dq), coeff)`` triples; exponents are
    integers of either sign and every monomial must have positive total
    degree.  Evaluated as ``exp(sum exponent * log(1 - monomial))``.
    """
    total_log = BiSeries.zero(caps)
    for exponent, (du, dq), coeff in factors:
        if du < 0 or dq < 0 or du + dq < 1:
            raise ValueError(f"factor monomial must have positive degree, got ({du},{dq})")
        if du > caps[0] or dq > caps[1] or exponent == 0:
            continue
        factor = BiSeries.one(caps) - BiSeries.monomial(caps, du, dq, coeff)
        total_log = total_log + ps_log(factor).scale(exponent)
    return ps_exp(total_log)
