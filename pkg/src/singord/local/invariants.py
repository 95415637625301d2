"""Numerical invariants of function and curve germs at their center."""
import logging
import random
import re

from ..arith.linalg import nullspace, rank
from ..arith.poly import MultiPoly, polynomial_gcd
from ..config import Settings, resolve
from ..errors import NotReduced, ParseError, ZeroInput
from .jets import JetIdeal, close_ideal

logger = logging.getLogger(__name__)

IDEAL_KINDS = ("ea", "a", "a1", "crit0", "crit")


def multiplicity(f: MultiPoly) -> int:
    """mt(f) at the center."""
    return f.local().order


def jacobian_ideal(f: MultiPoly, settings: Settings | None = None) -> JetIdeal:
    return close_ideal(f.gradient(), f.center, settings)


def milnor_number(f: MultiPoly, settings: Settings | None = None, order: int | None = None) -> int:
    grad = [g for g in f.gradient() if not g.is_zero]
    if not grad:
        raise ZeroInput(f"{f.to_text()} has vanishing gradient")
    if any(g.at(f.center).local().coefficient((0,) * f.nvars) for g in grad):
        return 0
    return close_ideal(grad, f.center, settings, order=order).colength


def tjurina_ideal(f: MultiPoly, settings: Settings | None = None) -> JetIdeal:
    return close_ideal([f, *f.gradient()], f.center, settings)


def tjurina_number(f: MultiPoly, settings: Settings | None = None) -> int:
    if f.local().coefficient((0,) * f.nvars):
        return 0
    return tjurina_ideal(f, settings).colength


def hessian_corank(f: MultiPoly) -> int:
    local = f.local()
    n = local.nvars
    dom = f.field.domain
    rows = []
    for i in range(n):
        row = {}
        for j in range(n):
            exp = [0] * n
            exp[i] += 1
            exp[j] += 1
            c = local.coefficient(exp)
            if c:
                row[j] = c * dom.convert(2) if i == j else c
        rows.append(row)
    return n - rank(rows, n, dom)


def is_reduced(f: MultiPoly) -> bool:
    """Square-free test at the center: gcd(f, f_x, f_y) is a unit there."""
    if f.is_zero:
        raise ZeroInput("the zero germ is not reduced")
    g = polynomial_gcd([f, *f.gradient()])
    return bool(g.evaluate(f.center))


# ── derived ideals ────────────────────────────────────────────────


def derived_ideal(f: MultiPoly, kind: str, settings: Settings | None = None) -> JetIdeal:
    """One of the ideals I^ea, I^a, m*I^a, I_0(f), m*I_0(f) of f at its center.

    ``a`` and ``crit0`` are the membership ideals {g : g, dg in R}, with R the
    Tjurina resp. Jacobian ideal, solved inside a jet model of R at an order
    above its certificate.
    """
    kind = kind.lower()
    if kind not in IDEAL_KINDS:
        raise ValueError(f"unknown ideal kind {kind!r}; expected one of {IDEAL_KINDS}")
    if kind in ("a", "a1") and not is_reduced(f):
        raise NotReduced(f"{f.to_text()} is not reduced at {f.center}")
    if kind == "ea":
        return tjurina_ideal(f, settings)
    reference = tjurina_ideal(f, settings) if kind in ("a", "a1") else jacobian_ideal(f, settings)
    member = _membership_ideal(reference)
    if kind in ("a", "crit0"):
        return member
    return member.times_maximal()


def _membership_ideal(reference: JetIdeal) -> JetIdeal:
    order = reference.certificate + 2
    ref = reference.at_order(order)
    space = ref.space
    n = ref.nvars
    qcols = {j: k for k, j in enumerate(ref.quotient_columns)}
    width = len(qcols)
    dom = ref.field.domain
    # monomials of degree > certificate and their partials already lie in ref
    top = space.degree_starts[min(reference.certificate + 1, order + 1)]
    equations: dict[int, dict] = {}
    for col, mono in enumerate(space.monomials[:top]):
        images = [ref.normal_form({col: dom.one})]
        for i in range(n):
            if mono[i]:
                lowered = list(mono)
                lowered[i] -= 1
                vec = {space.index[tuple(lowered)]: dom.convert(mono[i])}
                images.append(ref.normal_form(vec))
            else:
                images.append({})
        for block, image in enumerate(images):
            for j, c in image.items():
                equations.setdefault(block * width + qcols[j], {})[col] = c
    kernel = nullspace(list(equations.values()), space.dimension, dom)
    ideal = JetIdeal.from_rows(kernel, space, ref.variables, ref.field, ref.center)
    logger.debug("membership ideal: colength %d inside reference of colength %d",
                 ideal.colength, reference.colength)
    return ideal


# ── sampling ──────────────────────────────────────────────────────


def sample_ideal_element(ideal: JetIdeal, seed: int, settings: Settings | None = None) -> MultiPoly:
    """Seeded bounded-height combination of the ideal's basis, as a polynomial
    in global coordinates whose germ at the ideal's center lies in the ideal."""
    settings = resolve(settings)
    rng = random.Random(seed)
    height = settings.coefficient_height
    dom = ideal.field.domain
    combo: dict = {}
    for row in ideal.basis:
        c = rng.randint(-height, height)
        if not c:
            continue
        for j, v in row.items():
            combo[j] = combo.get(j, dom.zero) + dom.convert(c) * v
    local = ideal.space.poly({j: v for j, v in combo.items() if v}, ideal.variables, ideal.field)
    return local.translate([-c for c in ideal.center]).at(ideal.center)


# ── classification ────────────────────────────────────────────────


def classify_simple(f: MultiPoly, settings: Settings | None = None) -> str | None:
    """ADE type of an isolated critical point in the plane, or None if not simple.

    Relies on mu, the Hessian corank and the square-free part of the 3-jet.
    """
    if f.nvars != 2:
        raise ValueError("classification is implemented for plane germs")
    local = _without_constant(f.local())
    if local.is_zero:
        raise ZeroInput("the zero germ has no type")
    mu = milnor_number(f, settings)
    if mu == 0:
        return None
    corank = hessian_corank(f)
    if corank <= 1:
        return f"A{mu}"
    if local.order >= 4:
        return None
    cubic = local.homogeneous(3)
    if cubic.is_zero:
        return None
    distinct = _distinct_linear_factors(cubic)
    if distinct == 3:
        return "D4" if mu == 4 else None
    if distinct == 2:
        return f"D{mu}" if mu >= 5 else None
    return f"E{mu}" if mu in (6, 7, 8) else None


def _without_constant(local: MultiPoly) -> MultiPoly:
    c = local.coefficient((0,) * local.nvars)
    return local - c if c else local


def _distinct_linear_factors(form: MultiPoly) -> int:
    """Number of distinct lines in a binary form, over the algebraic closure."""
    element = form.element
    g = element.gcd(element.diff(0)).gcd(element.diff(1))
    # the square-free part has degree deg(form) - deg(gcd) for binary forms
    return form.degree - MultiPoly(g, form.field).degree


_TYPE_NAME = re.compile(r"^\s*([ADEade])\s*(\d+)\s*$")
_E_FORMS = {6: "x^3 - y^4", 7: "x^3 - x*y^3", 8: "x^3 - y^5"}


def normal_form(name: str) -> MultiPoly:
    """Plane normal form of a simple type such as ``A7``, ``D5`` or ``E6``."""
    match = _TYPE_NAME.match(name)
    if not match:
        raise ParseError(f"unknown singularity type {name!r}; expected Ak, Dk or E6/E7/E8")
    letter, k = match.group(1).upper(), int(match.group(2))
    if letter == "A" and k >= 1:
        return MultiPoly.parse(f"y^2 - x^{k + 1}")
    if letter == "D" and k >= 4:
        return MultiPoly.parse(f"x^2*y - y^{k - 1}")
    if letter == "E" and k in _E_FORMS:
        return MultiPoly.parse(_E_FORMS[k])
    raise ParseError(f"{name!r} is not a simple singularity type")
