"""Plane curves of given degree with prescribed singular points.

The targets are placed at random integer points through random local
automorphisms. A member of the linear system |J_Z(d)| is then checked
point by point, globally (no further singular points, also at infinity),
for irreducibility over QQ, and for T-smoothness.
"""
import logging
import random
from typing import Sequence

from ..arith.poly import MultiPoly
from ..bounds import PASS, existence_condition
from ..cohomology import cohomology, interpolation_basis
from ..config import Settings, resolve
from ..errors import ConditionFailed, ExtensionDepth, GenericityFailure, NonFiniteColength, NotReduced, VerificationFailure
from ..local.invariants import classify_simple, normal_form
from ..profile import germ_profile
from ..schemes import ZeroDimScheme, build_scheme, random_local_automorphism, union_all
from .verify import (
    CERTIFIED,
    FAILED,
    INVARIANT_MATCHED,
    CheckLog,
    RealizationResult,
    affine_singular_length,
    arithmetic_genus,
    is_irreducible_over_rationals,
    position_text,
    singular_at_infinity,
)

logger = logging.getLogger(__name__)

FLAVORS = ("top", "an")


def _place(germs: list[MultiPoly], rng: random.Random, settings: Settings) -> list[MultiPoly]:
    """Each germ moved to its own random integer point through a random local automorphism."""
    h = settings.coefficient_height
    used: set = set()
    placed = []
    for f in germs:
        while True:
            position = (rng.randint(-h, h), rng.randint(-h, h))
            if position not in used:
                used.add(position)
                break
        phi = random_local_automorphism(rng, settings, f.field, degree=2)
        moved = f.local().compose(phi)
        placed.append(moved.translate([-c for c in position]).at(position))
    return placed


def _with_point(scheme: ZeroDimScheme, rng: random.Random, settings: Settings) -> ZeroDimScheme:
    """Z plus one reduced point away from its support."""
    taken = {tuple(p.position) for p in scheme.points}
    h = settings.coefficient_height
    while True:
        position = tuple(scheme.field.convert(rng.randint(-h, h)) for _ in range(2))
        if position not in taken:
            break
    extra = build_scheme(None, "fat", position, m=1, settings=settings)
    return union_all([scheme, extra])


def _auxiliary(germs: list[MultiPoly], schemes: list[ZeroDimScheme], kind: str, d: int,
               rng: random.Random, seed: int, settings: Settings) -> dict:
    """The vanishings that make a general member irreducible and of the expected dimension."""
    z = union_all(schemes)
    out = {"e46": cohomology(_with_point(z, rng, settings), d - 1)[1] == 0}
    if kind == "s":
        swapped = []
        for i, g in enumerate(germs):
            rest = [s for j, s in enumerate(schemes) if j != i]
            z1 = union_all([*rest, build_scheme(g, "s1", seed=seed + i, settings=settings)])
            swapped.append(cohomology(z1, d - 1)[1] == 0)
        out["e47"] = all(swapped)
    return out


def _check_member(curve: MultiPoly, d: int, germs: list[MultiPoly], targets: list, flavor: str,
                  settings: Settings) -> tuple[CheckLog, str]:
    log = CheckLog()
    log.expect("degree", curve.degree, d)
    points = []
    total_tau = 0
    total_delta = 0
    simple = True
    for g, target in zip(germs, targets):
        local = curve.at(g.center)
        try:
            found = germ_profile(local, settings)
        except (NotReduced, NonFiniteColength, ExtensionDepth, ValueError) as exc:
            log.flag("profile", False, str(exc))
            return log, FAILED
        row = {
            "position": list(position_text(g.center)),
            "mu": found.mu,
            "tau": found.tau,
            "delta": found.delta,
            "branches": found.branches,
            "tree_match": found.resolution.tree.shape() == target.resolution.tree.shape(),
        }
        ok = row["tree_match"]
        if flavor == "an":
            ok = ok and found.mu == target.mu and found.tau == target.tau
        if target.type:
            ok = ok and found.type == target.type
        else:
            simple = False
        row["ok"] = ok
        points.append(row)
        if not ok:
            log.failed.append(f"point {row['position']} differs from its target")
        total_tau += found.tau
        total_delta += found.delta
    log.record("points", points)
    log.flag("tree_match", all(row["tree_match"] for row in points))
    length = affine_singular_length(curve)
    at_infinity = singular_at_infinity(curve)
    log.record("singular_scan", {"affine_length": length, "sum_tau": total_tau, "at_infinity": at_infinity})
    log.flag("extra_sing_clean", length == total_tau and not at_infinity)
    log.flag("irreducible", is_irreducible_over_rationals(curve))
    log.record("sum_delta", total_delta)
    log.flag("genus", total_delta <= arithmetic_genus(d))
    kind = "es" if flavor == "top" else "ea"
    tangent = union_all([build_scheme(curve.at(g.center), kind, settings=settings) for g in germs])
    h1 = cohomology(tangent, d)[1]
    log.record("t_smooth_h1", h1)
    log.flag("t_smooth", h1 == 0)
    if not log.ok:
        return log, FAILED
    return log, CERTIFIED if simple else INVARIANT_MATCHED


def minimal_degree(targets: Sequence[str | MultiPoly], flavor: str = "top", settings: Settings | None = None,
                   seed: int = 0, stop: int = 64) -> int:
    """Least d for which the existence condition of the flavor passes."""
    bound_id = "e39" if flavor == "top" else "e43"
    for d in range(1, stop + 1):
        reports = existence_condition(targets, d, settings, seed)
        if any(r.bound_id == bound_id and r.verdict == PASS for r in reports):
            return d
    raise ConditionFailed(f"no degree up to {stop} passes {bound_id}")


def realize_plane_curve(targets: Sequence[str | MultiPoly], d: int, seed: int = 0, flavor: str = "top",
                        settings: Settings | None = None) -> RealizationResult:
    """An irreducible degree-d curve whose singular points are exactly the targets."""
    settings = resolve(settings)
    flavor = flavor.lower()
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")
    if d < 1:
        raise ValueError(f"degree must be positive, got {d}")
    germs = [normal_form(t) if isinstance(t, str) else t for t in targets]
    if not germs:
        raise ValueError("at least one target singularity is needed")
    names = [classify_simple(g, settings) or g.to_text() for g in germs]
    target_profiles = [germ_profile(g.local(), settings) for g in germs]
    reports = existence_condition(germs, d, settings, seed)
    bound_id = "e39" if flavor == "top" else "e43"
    condition = next(r for r in reports if r.bound_id == bound_id)
    kind = "s" if flavor == "top" else "a"
    rng = random.Random(seed)
    last_failures: list[str] = []
    certified_once = False
    for attempt in range(settings.member_attempts):
        placed = _place(germs, rng, settings)
        schemes = [build_scheme(g, kind, seed=seed, settings=settings) for g in placed]
        z = union_all(schemes)
        if cohomology(z, d - 1)[1] != 0:
            logger.debug("curve: placement %d does not impose independent conditions in degree %d", attempt, d - 1)
            continue
        certified_once = True
        basis = interpolation_basis(z, d)
        auxiliary = _auxiliary(placed, schemes, kind, d, rng, seed, settings)
        for member in range(settings.member_attempts):
            h = settings.coefficient_height
            curve = None
            for b in basis:
                term = b.scale(b.field.convert(rng.randint(-h, h)))
                curve = term if curve is None else curve + term
            if curve is None or curve.is_zero:
                continue
            log, label = _check_member(curve, d, placed, target_profiles, flavor, settings)
            if label == FAILED:
                last_failures = log.failed
                logger.debug("curve: member %d of placement %d failed %s", member, attempt, log.failed)
                continue
            log.record("e48", True)
            details = {
                "flavor": flavor,
                "scheme_degree": z.degree,
                "system_dimension": len(basis),
                "condition": condition.to_json(),
                "auxiliary": auxiliary,
                "attempt": attempt,
                "member": member,
                "seed": seed,
            }
            return RealizationResult(curve, tuple(names), log.values, label, None, (), details)
    if not certified_once:
        if condition.verdict != PASS:
            raise ConditionFailed(
                f"{bound_id} fails for {names} in degree {d} and h1(J_Z({d - 1})) does not vanish"
            )
        raise GenericityFailure(f"no placement of {names} gave h1(J_Z({d - 1})) = 0")
    raise VerificationFailure(f"no member of the degree-{d} system passed: {last_failures}")
