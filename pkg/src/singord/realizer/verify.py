"""Result record and the checks that back a verified realization."""
import logging
from dataclasses import dataclass, field as dataclass_field

import sympy

from ..arith.poly import MultiPoly, polynomial_gcd
from ..arith.scalars import RATIONALS
from ..config import Settings
from ..errors import ModeUnsupported
from ..local.invariants import classify_simple, hessian_corank, milnor_number, tjurina_number
from ..profile import GermProfile, germ_profile

logger = logging.getLogger(__name__)

CERTIFIED = "CERTIFIED"
INVARIANT_MATCHED = "INVARIANT-MATCHED"
FAILED = "FAILED"


class CheckLog:
    """Ordered check values plus the names of the checks that failed."""

    def __init__(self):
        self.values: dict = {}
        self.failed: list[str] = []

    def expect(self, name: str, value, expected) -> bool:
        self.values[name] = value
        if value != expected:
            self.failed.append(f"{name}: got {value}, expected {expected}")
            return False
        return True

    def flag(self, name: str, ok: bool, value=None) -> bool:
        self.values[name] = ok if value is None else value
        if not ok:
            self.failed.append(name)
        return ok

    def record(self, name: str, value) -> None:
        self.values[name] = value

    @property
    def ok(self) -> bool:
        return not self.failed


@dataclass
class RealizationResult:
    polynomial: MultiPoly
    targets: tuple[str, ...]
    checks: dict
    label: str
    bound: int | None = None
    failures: tuple[str, ...] = ()
    details: dict = dataclass_field(default_factory=dict)

    @property
    def degree(self) -> int:
        return self.polynomial.degree

    @property
    def within_bound(self) -> bool:
        return self.bound is None or self.degree <= self.bound

    @property
    def verified(self) -> bool:
        return self.label != FAILED and not self.failures and self.within_bound

    def to_json(self) -> dict:
        return {
            "polynomial": self.polynomial.to_text(),
            "field": self.polynomial.field.describe(),
            "degree": self.degree,
            "bound": self.bound,
            "targets": list(self.targets),
            "checks": self.checks,
            "label": self.label,
            "failures": list(self.failures),
            "details": self.details,
            "verified": self.verified,
        }


# ── critical points ───────────────────────────────────────────────


def verify_critical_point(p: MultiPoly, target: GermProfile, settings: Settings) -> tuple[CheckLog, str]:
    """Compare the critical point of ``p`` at its center with the target profile.

    A_k targets are certified by mu and the Hessian corank. Other simple
    targets match mu, tau and the type; non-simple ones the full profile.
    """
    log = CheckLog()
    if p.local().coefficient((0,) * p.nvars):
        log.flag("vanishes_at_center", False)
        return log, FAILED
    log.expect("mu", milnor_number(p, settings), target.mu)
    log.expect("corank", hessian_corank(p), target.corank)
    if not log.ok:
        return log, FAILED
    if target.type and target.type.startswith("A"):
        return log, CERTIFIED
    log.expect("tau", tjurina_number(p, settings), target.tau)
    if target.type:
        log.expect("type", classify_simple(p, settings), target.type)
    else:
        found = germ_profile(p, settings)
        log.expect("delta", found.delta, target.delta)
        log.expect("branches", found.branches, target.branches)
        log.flag("tree_match", found.resolution.tree.shape() == target.resolution.tree.shape())
    return log, INVARIANT_MATCHED if log.ok else FAILED


# ── global scans for plane curves ─────────────────────────────────


def _exprs(polys: list[MultiPoly]) -> tuple[list, list]:
    if any(not p.field.is_rational for p in polys):
        raise ModeUnsupported("global scans are implemented over QQ")
    symbols = sympy.symbols(polys[0].variables)
    return [p.element.as_expr() for p in polys], list(symbols)


def affine_singular_length(curve: MultiPoly) -> int | None:
    """Length of the affine singular scheme {D = D_x = D_y = 0}, None if it is not finite.

    It equals the sum of the Tjurina numbers over all affine singular points.
    """
    exprs, symbols = _exprs([curve, *curve.gradient()])
    basis = sympy.groebner(exprs, *symbols, order="grevlex", domain="QQ")
    if basis.exprs == [1]:
        return 0
    leads = [sympy.Poly(g, *symbols).monoms(order="grevlex")[0] for g in basis.exprs]
    bounds = []
    for i in range(len(symbols)):
        pure = [m[i] for m in leads if all(e == 0 for j, e in enumerate(m) if j != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    count = 0
    for a in range(bounds[0]):
        for b in range(bounds[1]):
            if not any(a >= m[0] and b >= m[1] for m in leads):
                count += 1
    return count


def singular_at_infinity(curve: MultiPoly) -> bool:
    """Whether the projective closure is singular on the line at infinity."""
    d = curve.degree
    top = curve.homogeneous(d)
    below = curve.homogeneous(d - 1)
    g = polynomial_gcd([top.diff(0), top.diff(1), below])
    return g.degree > 0


def is_irreducible_over_rationals(curve: MultiPoly) -> bool:
    _, factors = curve.element.factor_list()
    if len(factors) != 1 or factors[0][1] != 1:
        return False
    return MultiPoly(factors[0][0], curve.field).degree == curve.degree


def arithmetic_genus(d: int) -> int:
    return (d - 1) * (d - 2) // 2


def position_text(position) -> tuple:
    return tuple(RATIONALS.to_text(c) for c in position)
