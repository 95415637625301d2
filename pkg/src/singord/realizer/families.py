"""Explicit A_k families: the plane family (y - x^m)^2 + y^(2m) and an A_k in three variables."""
import logging

from ..arith.poly import SPACE, MultiPoly
from ..arith.series import integrate, series_sqrt
from ..bounds import degree_cap, singularity_order_bounds
from ..cohomology import first_vanishing
from ..config import Settings, resolve
from ..errors import ExtensionDepth, GenericityFailure, OddOrder, VerificationFailure, ZeroInput
from ..local.invariants import hessian_corank, milnor_number, normal_form
from ..schemes import build_scheme
from .critical import realize_critical_point
from .verify import CERTIFIED, FAILED, CheckLog, RealizationResult

logger = logging.getLogger(__name__)

SERIES = ("t",)
MAX_K = 27


def ak_family(m: int, settings: Settings | None = None) -> RealizationResult:
    """(y - x^m)^2 + y^(2m): degree 2m with an A_{2m^2-1} point at the origin."""
    if m < 2:
        raise ValueError(f"the family starts at m = 2, got {m}")
    settings = resolve(settings)
    f = MultiPoly.parse(f"(y - x^{m})^2 + y^{2 * m}")
    k = 2 * m * m - 1
    log = CheckLog()
    log.expect("mu", milnor_number(f, settings), k)
    log.flag("corank", hessian_corank(f) <= 1, hessian_corank(f))
    cap = degree_cap(singularity_order_bounds(normal_form(f"A{k}"), "crit", settings))
    return RealizationResult(f, (f"A{k}",), log.values, CERTIFIED if log.ok else FAILED, cap,
                             tuple(log.failed), {"m": m})


# ── three variables ───────────────────────────────────────────────


def _size(k: int) -> int:
    """Least s with k <= s^3."""
    s = 1
    while s ** 3 < k:
        s += 1
    return s


def _split_square(h: MultiPoly) -> MultiPoly:
    """Linear change making the quadratic part of h equal to a*x^2 + c*y^2 with c != 0."""
    x = MultiPoly.gen(0, h.variables, h.field)
    y = MultiPoly.gen(1, h.variables, h.field)
    a, b, c = (h.coefficient(e) for e in ((2, 0), (1, 1), (0, 2)))
    if not c:
        h = h.compose([y, x]) if a else h.compose([x + y, y])
        a, b, c = (h.coefficient(e) for e in ((2, 0), (1, 1), (0, 2)))
    if b:
        h = h.compose([x, y - x * (b / (2 * c))])
    return h


def _curve_branch(h: MultiPoly, precision: int) -> MultiPoly:
    """x2(t) with h_{x2}(t, x2(t)) = 0 mod t^(precision+1), by fixed-point iteration."""
    t = MultiPoly.gen(0, SERIES, h.field)
    hy = h.diff(1)
    c2 = hy.coefficient((0, 1))
    branch = MultiPoly.constant(0, SERIES, h.field)
    for _ in range(precision + 1):
        step = hy.compose([t, branch], order=precision)
        if step.is_zero:
            break
        branch = (branch - step.scale(1 / c2)).truncate(precision)
    return branch


def _psi(h: MultiPoly, k: int, m0: int) -> tuple[MultiPoly, MultiPoly]:
    """The curve branch and psi with psi^2 = int_0^t (phi - t^k), phi = h_{x1} along the branch."""
    precision = k + 2
    t = MultiPoly.gen(0, SERIES, h.field)
    branch = _curve_branch(h, precision)
    phi = h.diff(0).compose([t, branch], order=precision)
    if phi.is_zero or phi.order != 2 * m0 - 1:
        raise VerificationFailure(f"phi has order {phi.order if not phi.is_zero else None}, expected {2 * m0 - 1}")
    square = integrate(phi - t ** k).truncate(precision + 1)
    # psi is needed modulo t^(k+2-m0)
    psi = series_sqrt(square, k + 1 - m0)
    return branch, psi


def construct_ak_3d(k: int, seed: int = 0, settings: Settings | None = None) -> RealizationResult:
    """f = h(x1, x2) + x3^2 - 2*x3*psi(x1) with an A_k point at the origin of 3-space."""
    if not 1 <= k <= MAX_K:
        raise ValueError(f"k must lie in 1..{MAX_K}, got {k}")
    settings = resolve(settings)
    s = _size(k)
    m0 = max(1, min(s * s, k // 2))
    last: Exception | None = None
    for attempt in range(settings.member_attempts):
        planar = realize_critical_point(f"A{2 * m0 - 1}", seed + attempt, settings)
        h = _split_square(planar.polynomial.with_variables(SPACE[:2]))
        try:
            branch, psi = _psi(h, k, m0)
        except (VerificationFailure, OddOrder, ZeroInput, ExtensionDepth) as exc:
            logger.debug("ak3d: planar germ %d rejected: %s", attempt, exc)
            last = exc
            continue
        fld = psi.field
        x1, x2, x3 = (MultiPoly.gen(i, SPACE, fld) for i in range(3))
        lifted = h.with_field(fld).compose([x1, x2])
        f = lifted + x3 ** 2 - x3 * psi.compose([x1]).scale(fld.convert(2))
        log = CheckLog()
        log.expect("mu", milnor_number(f, settings), k)
        log.flag("corank", hessian_corank(f) <= 1, hessian_corank(f))
        if not log.ok:
            logger.debug("ak3d: attempt %d failed %s", attempt, log.failed)
            last = VerificationFailure("; ".join(log.failed))
            continue
        h_order = first_vanishing(build_scheme(planar.polynomial, "crit0", settings=settings))
        details = {
            "s": s,
            "m0": m0,
            "h": planar.polynomial.to_text(),
            "h_z0_ord1": h_order,
            "branch": branch.to_text(),
            "psi": psi.to_text(),
            "attempt": attempt,
        }
        return RealizationResult(f, (f"A{k}",), log.values, CERTIFIED, None, (), details)
    if isinstance(last, ExtensionDepth):
        raise last
    if isinstance(last, VerificationFailure):
        raise last
    raise GenericityFailure(f"no planar germ of type A{2 * m0 - 1} led to A{k}")
