"""Verification suites: randomized cross-checks surfaced by the command line.

Each suite returns a :class:`SuiteResult` with one named check per property.
Instances are generated deterministically from a seed, so runs are
reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .charge import Charge, Geometry, local_curve, weight_g
from .hnconfig import enumerate_walls
from .liealg import LieElement, TruncationBounds, bracket, gen
from .localcurve import LocalCurveConfig, verify_genus0
from .uealg import UEAElement, exp_u, lie_coefficients, log_u, star
from .wallcross import (
    InvariantTable,
    jump_v2_js,
    jump_v2_ks,
    minus_table,
    verify_ks_group_identity,
)


@dataclass
class SuiteResult:
    name: str
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def add(self, label: str, ok: bool, detail: str = "") -> None:
        self.checks.append((label, ok, detail))

    def lines(self) -> list[str]:
        out = []
        for label, ok, detail in self.checks:
            line = f"[{'ok' if ok else 'FAIL'}] {self.name}: {label}"
            if detail:
                line += f" ({detail})"
            out.append(line)
        return out


# ---------------------------------------------------------------------------
# Random instance generation.
# ---------------------------------------------------------------------------

def random_fraction(rng: random.Random, span: int = 6, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_table(
    rng: random.Random, geom: Geometry, r_max: int = 4, e_max: int = 6, density: float = 0.7
) -> InvariantTable:
    """Random plus-chamber table on the charge window ``r <= r_max, 0 <= e <= e_max``."""
    table = InvariantTable(geom, "+")
    for r in range(1, r_max + 1):
        for e in range(0, e_max + 1):
            for v in (0, 1, 2):
                if rng.random() < density:
                    table.set(Charge(r, e, v), random_fraction(rng))
    return table


def wall_instances(seed: int, count: int, r_max: int = 4, e_max: int = 6):
    """At least ``count`` deterministic ``(alpha, delta_c, table)`` instances.

    Sweeps every target charge in the window, every positive wall of the
    target, and fresh random tables until the quota is met.
    """
    rng = random.Random(seed)
    geom = local_curve(1)
    targets = []
    for r in range(2, r_max + 1):
        for e in range(0, e_max + 1):
            walls = enumerate_walls((r, e), 2, nonneg=True).walls
            targets.extend(((r, e), dc) for dc in walls)
    if not targets:
        raise RuntimeError("no walls in the sweep window")
    instances = []
    while len(instances) < count:
        for alpha, dc in targets:
            instances.append((alpha, dc, random_table(rng, geom, r_max, e_max)))
            if len(instances) >= count:
                break
    return instances


# ---------------------------------------------------------------------------
# Suites.
# ---------------------------------------------------------------------------

def suite_closed_form(r_max: int = 3, e_max: int = 6) -> SuiteResult:
    """Genus-0 closed forms versus extraction, for both twisting pairs."""
    result = SuiteResult("closed-form")
    for d1 in (1, 0):
        report = verify_genus0(LocalCurveConfig(d1, TruncationBounds(r_max, e_max)))
        result.add(f"d1={d1}", report.passed, report.summary())
    return result


def suite_ks_vs_js(seed: int = 0, trials: int = 100) -> SuiteResult:
    """The two jump algorithms agree exactly on random wall instances."""
    result = SuiteResult("ks-vs-js")
    bad = 0
    first = ""
    instances = wall_instances(seed, trials)
    for alpha, dc, table in instances:
        js = jump_v2_js(alpha, dc, table)
        ks = jump_v2_ks(alpha, dc, table)
        if js != ks:
            bad += 1
            if not first:
                first = f"alpha={alpha} delta_c={dc}: js={js} ks={ks}"
    result.add(
        f"{len(instances)} instances",
        bad == 0,
        first if bad else "exact agreement",
    )
    return result


def suite_group_identity(
    seed: int = 0, trials: int = 100, trunc: TruncationBounds = TruncationBounds(5, 8)
) -> SuiteResult:
    """Slope-ordered factorization holds for jump-consistent minus tables and
    fails under a unit perturbation of a single jumped value."""
    result = SuiteResult("group-identity")
    rng = random.Random(seed + 1)
    bad_true = bad_flip = 0
    first = ""
    instances = wall_instances(seed, trials)
    for alpha, dc, table in instances:
        tm = minus_table(alpha, dc, table, trunc)
        if not verify_ks_group_identity(alpha, dc, table, tm, trunc):
            bad_true += 1
            if not first:
                first = f"identity failed at alpha={alpha} delta_c={dc}"
            continue
        jumped = [c for c in tm.entries if c.v in (1, 2) and tm.value(c) != table.value(c)]
        pool = jumped or [c for c in tm.entries if c.v in (1, 2)]
        if pool:
            victim = rng.choice(sorted(pool))
            perturbed = tm.copy()
            perturbed.set(victim, perturbed.value(victim) + 1)
            if verify_ks_group_identity(alpha, dc, table, perturbed, trunc):
                bad_flip += 1
                if not first:
                    first = f"perturbation at {victim} not detected (alpha={alpha}, dc={dc})"
    result.add(
        f"{len(instances)} instances",
        bad_true == 0,
        first if bad_true else "identity holds",
    )
    result.add(
        "unit perturbations detected",
        bad_flip == 0,
        first if bad_flip else "all detected",
    )
    return result


def suite_algebra(seed: int = 0) -> SuiteResult:
    """Exact algebra identities on random truncated elements."""
    result = SuiteResult("algebra")
    rng = random.Random(seed)
    geom = local_curve(1)
    trunc = TruncationBounds(4, 6)

    def random_lie(max_terms: int = 4) -> LieElement:
        total = LieElement.zero()
        for _ in range(rng.randint(1, max_terms)):
            r = rng.randint(0, trunc.r_max)
            e = rng.randint(0, trunc.e_max)
            v = rng.randint(0, 2)
            if r == 0 and (v == 0 or e > 0):
                r = 1
            total = total + gen(r, e, v, random_fraction(rng))
        return total

    ok = True
    for _ in range(500):
        x, y = random_lie(), random_lie()
        if bracket(x, y, geom, trunc) != -1 * bracket(y, x, geom, trunc):
            ok = False
            break
    result.add("antisymmetry on 500 random pairs", ok)

    ok = True
    for _ in range(500):
        x, y, z = random_lie(), random_lie(), random_lie()
        jac = (
            bracket(x, bracket(y, z, geom, trunc), geom, trunc)
            + bracket(y, bracket(z, x, geom, trunc), geom, trunc)
            + bracket(z, bracket(x, y, geom, trunc), geom, trunc)
        )
        if jac:
            ok = False
            break
    result.add("Jacobi on 500 random triples", ok)

    def random_uea(max_terms: int = 3) -> UEAElement:
        return UEAElement.from_lie(random_lie(max_terms))

    ok = True
    for _ in range(300):
        x, y, z = random_uea(), random_uea(), random_uea()
        left = star(star(x, y, geom, trunc), z, geom, trunc)
        right = star(x, star(y, z, geom, trunc), geom, trunc)
        if left != right:
            ok = False
            break
    result.add("star associativity on 300 random triples", ok)

    ok = True
    for _ in range(200):
        a = random_uea()
        if log_u(exp_u(a, geom, trunc), geom, trunc) != a:
            ok = False
            break
        if star(exp_u(a, geom, trunc), exp_u(-a, geom, trunc), geom, trunc) != UEAElement.one():
            ok = False
            break
    result.add("exp/log round trip and group inverse on 200 elements", ok)

    result.add("commutator families", _commutator_families_ok(geom, trunc))
    result.add("rank-one pair relation", _pair_relation_ok(geom, trunc))
    return result


def _commutator_families_ok(geom: Geometry, trunc: TruncationBounds) -> bool:
    """The three closed commutator families at genus zero:

    ``[e_(r1,n1), f_(r2,n2)] = (-1)**(n1+r1) (n1+r1) f``,
    ``[e_(r1,n1), g_(r2,n2)] = 2 (n1+r1) g``, and
    ``[f_a1, f_a2] = weight_g(a1, a2) g``.
    """
    for r1 in range(1, 3):
        for n1 in range(0, 3):
            for r2 in range(0, 2):
                for n2 in range(0, 3):
                    if r2 == 0 and n2 > 0:
                        continue
                    tot = Charge(r1 + r2, n1 + n2, 0)
                    if not trunc.admits(tot):
                        continue
                    m = n1 + r1
                    ef = bracket(gen(r1, n1, 0), gen(r2, n2, 1), geom, trunc)
                    want = gen(r1 + r2, n1 + n2, 1, Fraction((-1) ** m * m))
                    if ef != want:
                        return False
                    eg = bracket(gen(r1, n1, 0), gen(r2, n2, 2), geom, trunc)
                    want = gen(r1 + r2, n1 + n2, 2, Fraction(2 * m))
                    if eg != want:
                        return False
    for a1 in ((1, 0), (1, 1), (2, 1), (1, 2)):
        for a2 in ((1, 0), (1, 1), (2, 0), (2, 2)):
            ff = bracket(gen(a1[0], a1[1], 1), gen(a2[0], a2[1], 1), geom, trunc)
            want = gen(a1[0] + a2[0], a1[1] + a2[1], 2, Fraction(weight_g(a1, a2, geom)))
            if ff != want:
                return False
    return True


def _pair_relation_ok(geom: Geometry, trunc: TruncationBounds) -> bool:
    """Lie part of ``log(exp(f_a1) * exp(f_a2))`` is ``f_a1 + f_a2 +
    weight_g(a1, a2)/2 * g_(a1+a2)`` -- the two-term BCH formula."""
    for a1 in ((1, 0), (1, 1), (2, 1)):
        for a2 in ((1, 0), (1, 2), (2, 0)):
            f1, f2 = gen(a1[0], a1[1], 1), gen(a2[0], a2[1], 1)
            prod = star(
                exp_u(UEAElement.from_lie(f1), geom, trunc),
                exp_u(UEAElement.from_lie(f2), geom, trunc),
                geom,
                trunc,
            )
            got = lie_coefficients(log_u(prod, geom, trunc))
            want = f1 + f2 + gen(
                a1[0] + a2[0], a1[1] + a2[1], 2, Fraction(weight_g(a1, a2, geom), 2)
            )
            if got != want:
                return False
    return True


SUITES = {
    "closed-form": lambda cfg: suite_closed_form(cfg.r_max, cfg.e_max),
    "ks-vs-js": lambda cfg: suite_ks_vs_js(cfg.seed, cfg.trials),
    "group-identity": lambda cfg: suite_group_identity(cfg.seed, cfg.trials),
    "algebra": lambda cfg: suite_algebra(cfg.seed),
}
