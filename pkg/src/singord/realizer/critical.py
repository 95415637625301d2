"""Low-degree polynomials with a prescribed isolated critical point.

Two routes run on a random right-equivalent jet g of the target:

* simple targets: members of the linear system of curves through the
  cluster scheme Z^s(g), by increasing degree, until one carries the
  target type at the origin;
* all targets: the least m with h1(J_{Z0(g)}(m)) = 0, then a polynomial p
  of degree m+1 with p - g in m*I_0(g), solved on the condition matrix of
  the critical scheme Z(g).

The default route order tries the cluster route first for simple targets
and keeps the critical route as the fallback; ``route`` pins one of them.
The route that produced the polynomial is recorded in ``details["route"]``.
"""
import logging
import random

from ..arith.linalg import solve
from ..arith.poly import PLANE, MultiPoly, monomials
from ..bounds import degree_cap, singularity_order_bounds
from ..cohomology import condition_matrix, first_vanishing, interpolation_basis, residue_step_holds
from ..config import Settings, resolve
from ..errors import GenericityFailure, NonFiniteColength, VerificationFailure, ZeroInput
from ..local.invariants import classify_simple, milnor_number, normal_form
from ..profile import GermProfile, germ_profile
from ..schemes import ZeroDimScheme, build_scheme, generic_line, random_local_automorphism
from .verify import FAILED, RealizationResult, verify_critical_point

logger = logging.getLogger(__name__)

ORIGIN = (0, 0)
ROUTES = ("auto", "cluster", "critical")


def iso_jet(f: MultiPoly, mu: int, rng: random.Random, settings: Settings) -> MultiPoly:
    """f composed with a random origin-fixing automorphism, cut at the determinacy order mu+1."""
    phi = random_local_automorphism(rng, settings, f.field, degree=2)
    return f.local().compose(phi, order=mu + 1)


def _combination(basis: list[MultiPoly], rng: random.Random, settings: Settings) -> MultiPoly:
    h = settings.coefficient_height
    total = None
    for b in basis:
        term = b.scale(b.field.convert(rng.randint(-h, h)))
        total = term if total is None else total + term
    return total


def _cluster_route(g: MultiPoly, target: GermProfile, rng: random.Random, settings: Settings,
                   stop: int) -> tuple[MultiPoly, dict] | None:
    scheme = build_scheme(g, "s", settings=settings)
    for d in range(max(target.mt, 1), stop + 1):
        basis = interpolation_basis(scheme, d)
        if not basis:
            continue
        for attempt in range(settings.member_attempts):
            p = _combination(basis, rng, settings)
            if p is None or p.is_zero:
                continue
            try:
                if milnor_number(p, settings) != target.mu or classify_simple(p, settings) != target.type:
                    continue
            except (NonFiniteColength, ZeroInput):
                logger.debug("cluster route: member %d at degree %d is not isolated", attempt, d)
                continue
            return p, {"route": "cluster", "scheme_degree": scheme.degree, "system_dimension": len(basis)}
    return None


def _solve_against(scheme: ZeroDimScheme, g: MultiPoly, n: int, rng: random.Random,
                   settings: Settings) -> MultiPoly | None:
    """A random p of degree <= n with the same normal form as g modulo the scheme's ideal."""
    matrix = condition_matrix(scheme, n)
    ideal = scheme.points[0].ideal
    nf = ideal.normal_form_of(g.local())
    rhs = [nf.get(q, ideal.field.domain.zero) for q in ideal.quotient_columns]
    particular = solve(list(matrix.rows), rhs, matrix.ncols, matrix.domain)
    if particular is None:
        return None
    columns = monomials(2, n)
    p = MultiPoly.from_terms({columns[j]: v for j, v in particular.items()}, PLANE, scheme.field)
    kernel = interpolation_basis(scheme, n)
    if kernel:
        p = p + _combination(kernel, rng, settings)
    return p


def _critical_route(g: MultiPoly, rng: random.Random, seed: int, settings: Settings,
                    stop: int) -> tuple[MultiPoly, dict] | None:
    z0 = build_scheme(g, "crit0", settings=settings)
    z = build_scheme(g, "crit", settings=settings)
    m = first_vanishing(z0)
    line = generic_line(ORIGIN, seed, g, settings)
    details = {
        "route": "critical",
        "z0_degree": z0.degree,
        "z_degree": z.degree,
        "z0_ord1": m,
        "residue_step": residue_step_holds(z, line, m + 1),
    }
    for n in range(m + 1, stop + 1):
        p = _solve_against(z, g, n, rng, settings)
        if p is not None:
            details["solved_degree"] = n
            return p, details
        logger.debug("critical route: no solution in degree %d", n)
    return None


def realize_critical_point(f: MultiPoly | str, seed: int = 0, settings: Settings | None = None,
                           route: str = "auto") -> RealizationResult:
    """A polynomial of low degree right-equivalent to ``f`` at the origin."""
    settings = resolve(settings)
    if route not in ROUTES:
        raise ValueError(f"unknown route {route!r}; expected one of {ROUTES}")
    f = normal_form(f) if isinstance(f, str) else f
    if f.nvars != 2:
        raise ValueError("critical points are realized in the plane")
    target = germ_profile(f.local(), settings)
    name = target.type or f.to_text()
    if route == "cluster" and not target.type:
        raise ValueError(f"the cluster route needs a simple target, {name} is not simple")
    cap = degree_cap(singularity_order_bounds(f.local(), "crit", settings, seed=seed))
    stop = target.mu + 1
    rng = random.Random(seed)
    last_failures: list[str] = []
    for attempt in range(settings.member_attempts):
        g = iso_jet(f, target.mu, rng, settings)
        found = None
        if target.type and route != "critical":
            found = _cluster_route(g, target, rng, settings, stop)
        if found is None and route != "cluster":
            found = _critical_route(g, rng, seed + attempt, settings, stop)
        if found is None:
            logger.debug("realize %s: attempt %d found no polynomial", name, attempt)
            continue
        p, details = found
        log, label = verify_critical_point(p, target, settings)
        if label == FAILED:
            last_failures = log.failed
            logger.debug("realize %s: attempt %d failed %s", name, attempt, log.failed)
            continue
        log.record("degree", p.degree)
        details.update({"attempt": attempt, "seed": seed, "jet": g.to_text()})
        result = RealizationResult(p, (name,), log.values, label, cap, tuple(log.failed), details)
        logger.debug("realized %s in degree %d (cap %d)", name, p.degree, cap)
        return result
    if last_failures:
        raise VerificationFailure(f"no candidate for {name} passed verification: {last_failures}")
    raise GenericityFailure(f"no polynomial found for {name} after {settings.member_attempts} jets")
