"""Numeric inequalities on computed invariants, evaluated exactly.

Every right-hand side has the shape ``c*sqrt(r) + q`` with rational c, r, q;
comparisons against rationals square both sides after a sign case split.
"""
import logging
import re
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .arith.poly import MultiPoly
from .arith.scalars import rational_text
from .cohomology import generic_orders
from .config import Settings, resolve
from .local.invariants import classify_simple, milnor_number, multiplicity, normal_form
from .puiseux import delta_invariant
from .schemes import ZeroDimScheme, build_scheme

logger = logging.getLogger(__name__)

PASS, FAIL, INCONCLUSIVE = "PASS", "FAIL", "INCONCLUSIVE"

HISTORICAL_CONSTANTS = {
    "e19": "ord1_top < (1 + sqrt(2))*sqrt(deg) + mt + 1",
    "e20": "ord1_top < (sqrt(85) - 3)/2*sqrt(deg) + mt + mt_s + 1",
}

_TYPE = re.compile(r"^([ADE])(\d+)$")


# ── exact surds ───────────────────────────────────────────────────


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


@dataclass(frozen=True)
class Surd:
    """coeff*sqrt(radicand) + offset."""

    coeff: Fraction = Fraction(0)
    radicand: Fraction = Fraction(0)
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        if self.radicand < 0:
            raise ValueError(f"negative radicand {self.radicand}")

    @classmethod
    def rational(cls, value) -> "Surd":
        return cls(Fraction(0), Fraction(0), Fraction(value))

    @classmethod
    def root(cls, radicand, coeff=1, offset=0) -> "Surd":
        return cls(Fraction(coeff), Fraction(radicand), Fraction(offset))

    @property
    def is_rational(self) -> bool:
        return not self.coeff or not self.radicand

    def __add__(self, q) -> "Surd":
        return Surd(self.coeff, self.radicand, self.offset + Fraction(q))

    def __sub__(self, q) -> "Surd":
        return self + (-Fraction(q))

    def sign(self) -> int:
        s = _sign(self.coeff) if self.radicand else 0
        t = _sign(self.offset)
        if s >= 0 and t >= 0:
            return 1 if s or t else 0
        if s <= 0 and t <= 0:
            return -1
        diff = self.coeff**2 * self.radicand - self.offset**2
        if diff > 0:
            return s
        if diff < 0:
            return t
        return 0

    def compare(self, other: "Surd | Fraction | int") -> int:
        if not isinstance(other, Surd):
            other = Surd.rational(other)
        if other.is_rational:
            return (self - other.offset).sign()
        if self.is_rational:
            return -(other - self.offset).sign()
        if self.radicand != other.radicand:
            raise ValueError("comparison of surds with different radicands")
        return Surd(self.coeff - other.coeff, self.radicand, self.offset - other.offset).sign()

    def floor(self) -> int:
        bound = abs(self.offset.numerator) // self.offset.denominator + 1
        bound += (abs(self.coeff.numerator) // self.coeff.denominator + 1) * (isqrt(int(self.radicand) + 1) + 1)
        lo, hi = -bound - 1, bound + 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.compare(mid) >= 0:
                lo = mid
            else:
                hi = mid
        return lo

    def strict_floor(self) -> int:
        """Largest integer strictly below the value."""
        n = self.floor()
        return n - 1 if self.compare(n) == 0 else n

    def difference(self, other: "Surd") -> "Surd":
        """self - other when one of the two is rational or they share a radicand."""
        if other.is_rational:
            return self - other.offset
        if self.is_rational:
            return Surd(-other.coeff, other.radicand, self.offset - other.offset)
        return Surd(self.coeff - other.coeff, self.radicand, self.offset - other.offset)

    def to_text(self) -> str:
        if self.is_rational:
            return rational_text(self.offset)
        root = f"sqrt({rational_text(self.radicand)})"
        head = root if self.coeff == 1 else f"{rational_text(self.coeff)}*{root}"
        if not self.offset:
            return head
        sign = "-" if self.offset < 0 else "+"
        return f"{head} {sign} {rational_text(abs(self.offset))}"


def sqrt_plus_ratio(s: Fraction, deg, shift) -> Surd:
    """sqrt(s) + deg/sqrt(s) + shift, written as (1 + deg/s)*sqrt(s) + shift."""
    s = Fraction(s)
    return Surd.root(s, 1 + Fraction(deg) / s, shift)


# ── reports ───────────────────────────────────────────────────────


_RELATIONS = {
    "<=": lambda c: c <= 0,
    "<": lambda c: c < 0,
    ">=": lambda c: c >= 0,
    ">": lambda c: c > 0,
    "==": lambda c: c == 0,
}


@dataclass(frozen=True)
class BoundReport:
    bound_id: str
    lhs: str
    relation: str
    rhs: str
    verdict: str
    slack: str
    details: dict = dataclass_field(default_factory=dict, compare=False, hash=False)
    bound: Surd = dataclass_field(default=Surd(), compare=False, hash=False)

    def to_json(self) -> dict:
        return {
            "id": self.bound_id,
            "lhs": self.lhs,
            "relation": self.relation,
            "rhs": self.rhs,
            "verdict": self.verdict,
            "slack": self.slack,
            "details": dict(self.details),
        }


def compare_bound(bound_id: str, lhs, relation: str, rhs, details: dict | None = None,
                  stable: bool = True) -> BoundReport:
    lhs = lhs if isinstance(lhs, Surd) else Surd.rational(lhs)
    rhs = rhs if isinstance(rhs, Surd) else Surd.rational(rhs)
    holds = _RELATIONS[relation](lhs.compare(rhs))
    if not stable:
        verdict = INCONCLUSIVE
    else:
        verdict = PASS if holds else FAIL
    slack = rhs.difference(lhs) if relation in ("<=", "<") else lhs.difference(rhs)
    if verdict == FAIL:
        logger.debug("bound %s fails: %s %s %s", bound_id, lhs.to_text(), relation, rhs.to_text())
    return BoundReport(bound_id, lhs.to_text(), relation, rhs.to_text(), verdict, slack.to_text(), details or {}, rhs)


def worst_verdict(reports: Sequence[BoundReport]) -> str:
    verdicts = {r.verdict for r in reports}
    if FAIL in verdicts:
        return FAIL
    if INCONCLUSIVE in verdicts:
        return INCONCLUSIVE
    return PASS


def simple_type(name: str | None) -> tuple[str, int] | None:
    if not name:
        return None
    match = _TYPE.match(name)
    return (match.group(1), int(match.group(2))) if match else None


# ── degree formulas ────────────────────────────────────────────────────────────────────────────────


def check_degree_bounds(f: MultiPoly, settings: Settings | None = None, seed: int = 0) -> list[BoundReport]:
    """deg Z^s, deg Z^a, deg Z0 against the exact formulas and inequalities."""
    settings = resolve(settings)
    kind = simple_type(classify_simple(f, settings))
    mu = milnor_number(f, settings)
    mt = multiplicity(f)
    delta = delta_invariant(f, settings=settings)
    z_s = build_scheme(f, "s", settings=settings)
    z_a = build_scheme(f, "a", settings=settings)
    z_0 = build_scheme(f, "crit0", settings=settings)
    info = {"mu": mu, "mt": mt, "delta": delta, "deg_s": z_s.degree, "deg_a": z_a.degree, "deg_z0": z_0.degree}
    reports = []
    if kind and kind[0] == "A":
        k = kind[1]
        target = (3 * k + 4) // 2
        reports.append(compare_bound("e41", z_s.degree, "==", target, {**info, "scheme": "s"}))
        reports.append(compare_bound("e41", z_a.degree, "==", target, {**info, "scheme": "a"}))
        reports.append(compare_bound("z0-ak", z_0.degree, "==", 2 * k + 1, {**info, "scheme": "crit0"}))
    else:
        if kind and kind[0] == "D":
            target = (3 * kind[1] + 1) // 2
            reports.append(compare_bound("e41", z_s.degree, "==", target, {**info, "scheme": "s"}))
        if kind and kind[0] == "E":
            reports.append(compare_bound("e41", z_a.degree, "==", kind[1] + 3, {**info, "scheme": "a"}))
        reports.append(compare_bound("e40", z_s.degree, "<=", 3 * delta, info))
        reports.append(compare_bound("e42", z_a.degree, "<=", 2 * mu, info))
        reports.append(compare_bound("e71", z_0.degree, "<=", 3 * mu - 2 * mt + 2, info))
    for name, scheme in (("s", z_s), ("a", z_a)):
        reports.extend(sandwich_reports(scheme, seed, settings, name))
    return reports


def sandwich_reports(scheme: ZeroDimScheme, seed: int = 0, settings: Settings | None = None,
                     label: str = "") -> list[BoundReport]:
    """deg Z <= M2(Z) and M2(Z) < 2 deg Z."""
    m2 = sum(tree.m2 for tree in scheme.trees(seed, settings))
    details = {"scheme": label or scheme.provenance, "deg": scheme.degree, "m2": m2}
    return [
        compare_bound("e38", scheme.degree, "<=", m2, details),
        compare_bound("e73", m2, "<", 2 * scheme.degree, details),
    ]


# ── orders of schemes ─────────────────────────────────────────────


def is_nonsingular_cluster(scheme: ZeroDimScheme) -> bool:
    return all(
        p.cluster is not None and all(v.multiplicity == 1 for v in p.cluster.vertices) for p in scheme.points
    )


def check_order_bounds(scheme: ZeroDimScheme, mode: str = "iso", trials: int | None = None, seed: int = 0,
                       settings: Settings | None = None) -> list[BoundReport]:
    settings = resolve(settings)
    orders = generic_orders(scheme, mode, trials, seed, settings)
    deg = scheme.degree
    m2 = scheme.m2(seed, settings)
    stable = orders.stable
    info = {"deg": deg, "m2": m2, "ord0": orders.ord0, "ord1": orders.ord1, "mode": orders.mode,
            "trials": len(orders.trials), "stable": stable}
    reports = [
        compare_bound("e3", orders.ord0, ">=", Surd.root(2 * m2, Fraction(deg, 2 * m2)), info, stable),
        compare_bound("e3-weak", orders.ord0, ">", Surd.root(deg, Fraction(1, 2)), info, stable),
    ]
    if is_nonsingular_cluster(scheme):
        # -[(3 - sqrt(1 + 8 deg))/2]
        expected = -Surd.root(1 + 8 * deg, Fraction(-1, 2), Fraction(3, 2)).floor()
        reports.append(compare_bound("e22", orders.ord1, "==", expected, info, stable))
    else:
        reports.append(compare_bound("e7", orders.ord1, "<=", sqrt_plus_ratio(Fraction(3 * m2, 2), deg, -2),
                                     info, stable))
        if deg > 2:
            reports.append(compare_bound("e24", orders.ord1, "<", Surd.root(3 * deg, Fraction(4, 3), -2),
                                         info, stable))
    return reports


# ── existence conditions ──────────────────────────────────────────


def _germs(targets: Sequence[str | MultiPoly]) -> list[MultiPoly]:
    return [normal_form(t) if isinstance(t, str) else t for t in targets]


def existence_condition(targets: Sequence[str | MultiPoly], d: int, settings: Settings | None = None,
                        seed: int = 0) -> list[BoundReport]:
    """Sufficient conditions for an irreducible degree-d curve with these singularities."""
    settings = resolve(settings)
    germs = _germs(targets)
    names = [classify_simple(g, settings) for g in germs]
    rhs = d * d - 2 * d + 3
    reports = []
    for bound_id, kind in (("e39", "s"), ("e43", "a")):
        schemes = [build_scheme(g, kind, settings=settings) for g in germs]
        deg = sum(s.degree for s in schemes)
        m2 = sum(s.m2(seed, settings) for s in schemes)
        value = sqrt_plus_ratio(Fraction(3 * m2, 2), deg, 0).floor()
        reports.append(compare_bound(bound_id, value, "<=", d + 1, {"deg": deg, "m2": m2, "d": d}))
    n = names.count("A1")
    k = names.count("A2")
    t = names.count("D4")
    types = [simple_type(name) for name in names]
    u = sum(1 for st in types if st and st[0] == "A" and st[1] >= 4 and st[1] % 2 == 0)
    others = [g for g, name in zip(germs, names) if name not in ("A1", "A2", "D4")]
    deltas = [delta_invariant(g, settings=settings) for g in others]
    mus = [milnor_number(g, settings) for g in others]
    base = 6 * n + 10 * k + Fraction(169, 6) * t
    e50 = base + Fraction(25, 3) * u + Fraction(27, 2) * sum(deltas)
    e57 = base + sum(
        Fraction((10 * mu + 3 * delta) ** 2, 2 * (6 * mu + 3 * delta)) for mu, delta in zip(mus, deltas)
    )
    info = {"nodes": n, "cusps": k, "triple_points": t, "a_even": u, "d": d}
    reports.append(compare_bound("e50", e50, "<=", rhs, info))
    reports.append(compare_bound("e57", e57, "<=", rhs, info))
    total_mu = sum(milnor_number(g, settings) for g in germs)
    reports.append(compare_bound("r2", total_mu, "<=", Fraction(rhs, 9), {"sum_mu": total_mu, "d": d}))
    return reports


# ── degree caps for a single singularity ──────────────────────────


def singularity_order_bounds(f: MultiPoly | str, flavor: str = "an", settings: Settings | None = None,
                             degree: int | None = None, seed: int = 0) -> list[BoundReport]:
    """Upper bounds for e^s (``top``), e^a (``an``) or e^a(f) (``crit``).

    The left-hand side is ``degree`` when given (a realized degree), else the
    multiplicity, which every realizing curve or polynomial must reach.
    """
    settings = resolve(settings)
    flavor = flavor.lower()
    if flavor not in ("top", "an", "crit"):
        raise ValueError(f"unknown flavor {flavor!r}; expected top, an or crit")
    f = normal_form(f) if isinstance(f, str) else f
    kind = simple_type(classify_simple(f, settings))
    mu = milnor_number(f, settings)
    mt = multiplicity(f)
    lhs = degree if degree is not None else mt
    info = {"mu": mu, "mt": mt, "type": f"{kind[0]}{kind[1]}" if kind else None, "flavor": flavor}
    reports = []
    if kind:
        letter, m = kind
        shift = -1 if flavor == "crit" else 0
        if letter == "A":
            cap = 2 * isqrt(m + 5) + shift
        elif letter == "D":
            cap = 2 * isqrt(m + 7) + 1 + shift
        else:
            cap = (m + 2) // 2
        reports.append(compare_bound("t5" if flavor == "crit" else "t3-3", lhs, "<=", cap, info))
        return reports
    delta = delta_invariant(f, settings=settings)
    info["delta"] = delta
    if flavor == "crit":
        value = 3 * mu - 2 * mt + 2
        reports.append(compare_bound("e72", lhs, "<", Surd.root(3 * value, Fraction(4, 3), -1), info))
        return reports
    if flavor == "top":
        reports.append(compare_bound("t3-3", lhs, "<=", Surd.root(6 * delta, Fraction(3, 2), -1), info))
        z = build_scheme(f, "s", settings=settings)
        bound_id = "e45"
    else:
        a = Fraction(6 * mu + 3 * delta, 2)
        reports.append(compare_bound("t3-3", lhs, "<=", Surd.root(a, Fraction(10 * mu + 3 * delta, 2) / a, -1), info))
        reports.append(compare_bound("t3-3-weak", lhs, "<=", Surd.root(mu, 3, -1), info))
        z = build_scheme(f, "a", settings=settings)
        bound_id = "e44"
    m2 = z.m2(seed, settings)
    reports.append(compare_bound(bound_id, lhs, "<=", sqrt_plus_ratio(Fraction(3 * m2, 2), z.degree, -1),
                                 {**info, "deg": z.degree, "m2": m2}))
    return reports


def degree_cap(reports: Sequence[BoundReport]) -> int:
    """Largest degree allowed by every cap in the reports."""
    return min(r.bound.strict_floor() if r.relation == "<" else r.bound.floor() for r in reports)
