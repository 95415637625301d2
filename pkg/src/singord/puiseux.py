"""Resolution of reduced plane curve germs by point blow-ups.

Infinitely near points are reached through the two standard charts of the
blow-up of a point with local coordinates (x, y):

    free slope c    x = x',        y = x'(y' + c)     exceptional divisor x' = 0
    infinite        x = x'y',      y = y'             exceptional divisor y' = 0

Tangent directions come from factoring the tangent cone over the current
scalar field. An irreducible factor p of degree k > 1 is a packet of k
conjugate points and is never split: the packet is followed as one point
over the residue field K[t]/(p), and everything below it counts k times.
Packets inside packets build a tower of residue fields.

Strict transforms are kept as polynomials truncated at a jet budget that
drops by the multiplicity at every blow-up. Whenever a point needs more
jet than is left, the walk restarts with a doubled budget.
"""
import logging
import random
from math import comb
from dataclasses import dataclass, field as dataclass_field
from functools import cached_property
from typing import Iterable, Sequence

from .arith.linalg import nullspace
from .arith.poly import PLANE, MultiPoly, eliminant, poly_ring, polynomial_gcd
from .arith.scalars import RATIONALS, ScalarField
from .config import Settings, resolve
from .errors import (
    CommonComponent,
    ExtensionDepth,
    GenericityFailure,
    InvariantBreach,
    NonFiniteColength,
    NotReduced,
    ParseError,
    ProximityViolation,
)
from .local.invariants import is_reduced, milnor_number, sample_ideal_element
from .local.jets import JetIdeal, jet_space

logger = logging.getLogger(__name__)

INFINITE = "inf"


# ── cluster trees ─────────────────────────────────────────────────


@dataclass(frozen=True)
class ClusterVertex:
    parent: int | None
    multiplicity: int
    direction: str | None = None
    proximate: tuple[int, ...] = ()
    packet: int = 1
    field: ScalarField = RATIONALS

    @property
    def is_satellite(self) -> bool:
        return len(self.proximate) == 2

    def to_json(self) -> dict:
        out = {
            "parent": self.parent,
            "multiplicity": self.multiplicity,
            "direction": self.direction,
            "proximate": list(self.proximate),
            "packet": self.packet,
        }
        if not self.field.is_rational:
            out["field"] = self.field.to_json()
        return out


@dataclass(frozen=True)
class ClusterTree:
    """A finite tree of infinitely near points of one point, with multiplicities.

    ``direction`` of a non-root vertex is its slope in the parent's chart
    (``"inf"`` for the direction x = 0), or None when only the shape is known.
    ``packet`` counts the conjugate points a vertex stands for. A vertex over a
    residue field carries that field, and its direction is written in it;
    other directions are read in the tree's ``field``.
    """

    vertices: tuple[ClusterVertex, ...]
    field: ScalarField = RATIONALS

    def __post_init__(self):
        if not self.vertices or self.vertices[0].parent is not None:
            raise ProximityViolation("a cluster tree needs a root vertex first")
        for i, v in enumerate(self.vertices[1:], start=1):
            if v.parent is None or not 0 <= v.parent < i:
                raise ProximityViolation(f"vertex {i} must have an earlier parent")
            if v.parent not in v.proximate:
                raise ProximityViolation(f"vertex {i} is not proximate to its parent")
            if v.multiplicity < 0:
                raise ProximityViolation(f"vertex {i} has negative multiplicity")

    @classmethod
    def from_directions(
        cls,
        entries: Sequence[tuple[int | None, int, str | None]],
        field: ScalarField = RATIONALS,
        packets: Sequence[int] | None = None,
        fields: Sequence[ScalarField] | None = None,
    ) -> "ClusterTree":
        """Build from (parent, multiplicity, direction) rows, deriving proximity."""
        divisors: list[dict[int, str]] = []
        vertices = []
        for i, (parent, mult, direction) in enumerate(entries):
            packet = packets[i] if packets else 1
            own = fields[i] if fields else RATIONALS
            if parent is None:
                divisors.append({})
                vertices.append(ClusterVertex(None, mult, None, (), packet, own))
                continue
            if direction is None:
                raise ProximityViolation(f"vertex {i} needs a direction to derive proximity")
            reader = field if own.is_rational else own
            slope = None if direction == INFINITE else reader.parse(direction)
            div = _child_divisors(parent, divisors[parent], slope)
            divisors.append(div)
            vertices.append(ClusterVertex(parent, mult, direction, tuple(sorted(div)), packet, own))
        return cls(tuple(vertices), field)

    # ── structure ─────────────────────────────────────────────────

    @cached_property
    def children(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {i: [] for i in range(len(self.vertices))}
        for i, v in enumerate(self.vertices):
            if v.parent is not None:
                out[v.parent].append(i)
        return out

    def depth(self, i: int) -> int:
        d = 0
        while self.vertices[i].parent is not None:
            i = self.vertices[i].parent
            d += 1
        return d

    def field_of(self, i: int) -> ScalarField:
        own = self.vertices[i].field
        return self.field if own.is_rational else own

    @property
    def root(self) -> ClusterVertex:
        return self.vertices[0]

    @property
    def has_directions(self) -> bool:
        return all(v.direction is not None for v in self.vertices[1:])

    # ── numerical data ────────────────────────────────────────────

    @property
    def degree(self) -> int:
        return sum(v.packet * v.multiplicity * (v.multiplicity + 1) // 2 for v in self.vertices)

    @property
    def m2(self) -> int:
        return sum(v.packet * v.multiplicity**2 for v in self.vertices)

    @property
    def delta(self) -> int:
        return sum(v.packet * v.multiplicity * (v.multiplicity - 1) // 2 for v in self.vertices)

    def check_proximity(self) -> None:
        """m(p) >= sum of m(q) over points q proximate to p."""
        load = [0] * len(self.vertices)
        for v in self.vertices[1:]:
            for p in v.proximate:
                share, rest = divmod(v.packet * v.multiplicity, self.vertices[p].packet)
                if rest:
                    raise ProximityViolation("packet sizes are inconsistent along the tree")
                load[p] += share
        for i, v in enumerate(self.vertices):
            if load[i] > v.multiplicity:
                raise ProximityViolation(
                    f"vertex {i}: multiplicity {v.multiplicity} < {load[i]} carried by proximate points"
                )

    # ── comparison ────────────────────────────────────────────────

    def shape(self) -> tuple:
        """Canonical form forgetting directions: multiplicities, packets, proximity."""

        def key(i: int) -> tuple:
            v = self.vertices[i]
            d = self.depth(i)
            prox = tuple(sorted(d - self.depth(p) for p in v.proximate))
            return (v.multiplicity, v.packet, prox, tuple(sorted(key(c) for c in self.children[i])))

        return key(0)

    def path_keys(self) -> dict[tuple[str, ...], int]:
        """Vertex index by its direction path from the root."""
        keys: dict[tuple[str, ...], int] = {(): 0}
        paths = {0: ()}
        for i, v in enumerate(self.vertices[1:], start=1):
            paths[i] = paths[v.parent] + (str(v.direction),)
            keys[paths[i]] = i
        return keys

    def without_directions(self) -> "ClusterTree":
        return ClusterTree(
            tuple(ClusterVertex(v.parent, v.multiplicity, None, v.proximate, v.packet) for v in self.vertices),
            RATIONALS,
        )

    # ── serialization ─────────────────────────────────────────────

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "vertices": [v.to_json() for v in self.vertices],
            "degree": self.degree,
            "m2": self.m2,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ClusterTree":
        fld = ScalarField.from_json(data.get("field"))
        raw = data.get("vertices") or []
        if not raw:
            raise ParseError("cluster tree without vertices")
        rows, packets, fields = [], [], []
        explicit = []
        for i, item in enumerate(raw):
            try:
                parent = item.get("parent")
                mult = int(item["multiplicity"])
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"cluster vertex {i} is malformed: {item!r}") from exc
            direction = item.get("direction")
            rows.append((parent, mult, None if direction is None else str(direction)))
            packets.append(int(item.get("packet", 1)))
            fields.append(ScalarField.from_json(item.get("field")))
            explicit.append(item.get("proximate"))
        if all(r[2] is not None for r in rows[1:]):
            tree = cls.from_directions(rows, fld, packets, fields)
        else:
            vertices = []
            for (parent, mult, direction), packet, own, prox in zip(rows, packets, fields, explicit):
                if parent is None:
                    vertices.append(ClusterVertex(None, mult, None, (), packet, own))
                else:
                    prox = tuple(sorted(prox)) if prox else (parent,)
                    vertices.append(ClusterVertex(parent, mult, direction, prox, packet, own))
            tree = cls(tuple(vertices), fld)
        tree.check_proximity()
        return tree


def _child_divisors(parent: int, divisors: dict[int, str], slope) -> dict[int, str]:
    """Exceptional divisors through a point of E_parent, as coordinate axes.

    ``"x"`` marks a divisor {x = 0}, ``"y"`` a divisor {y = 0}.
    """
    if slope is None:
        out = {parent: "y"}
        out.update({v: "x" for v, axis in divisors.items() if axis == "x"})
        return out
    out = {parent: "x"}
    if not slope:
        out.update({v: "y" for v, axis in divisors.items() if axis == "y"})
    return out


# ── branch classes ────────────────────────────────────────────────


@dataclass(frozen=True)
class BranchClass:
    """Conjugate branches sharing one path through the essential tree."""

    path: tuple[int, ...]
    multiplicity_sequence: tuple[int, ...]
    packet: int

    @property
    def multiplicity(self) -> int:
        return self.multiplicity_sequence[0]

    @property
    def characteristic(self) -> tuple[int, ...]:
        """Puiseux characteristic (n; b1, b2, ...) recovered from the multiplicities."""
        return characteristic_exponents(self.multiplicity_sequence)

    def to_json(self) -> dict:
        return {
            "packet": self.packet,
            "multiplicity_sequence": list(self.multiplicity_sequence),
            "characteristic": list(self.characteristic),
            "path": list(self.path),
        }


def characteristic_exponents(sequence: Sequence[int]) -> tuple[int, ...]:
    """Invert the Euclidean blocks of a branch multiplicity sequence."""
    seq = list(sequence)
    n = seq[0]
    out = [n]

    def at(i: int) -> int:
        return seq[i] if i < len(seq) else 1

    i, beta, e = 0, 0, n
    while e > 1:
        q = 0
        while at(i) == e:
            q += 1
            i += 1
        r = at(i)
        beta += q * e + r
        out.append(beta)
        a, b = e, r
        while b:
            steps = a // b
            i += steps
            a, b = b, a - steps * b
        # the Euclid run of (e, r) ends with gcd(e, r)
        e = a
    return tuple(out)


# ── resolution ────────────────────────────────────────────────────


class _Exhausted(Exception):
    """A point needs more jet than the current budget carries."""


@dataclass
class _Point:
    index: int
    parent: int | None
    direction: str | None
    divisors: dict[int, str]
    field: ScalarField
    packet: int
    germs: list[MultiPoly]
    budgets: list[int]
    orders: list[int] = dataclass_field(default_factory=list)


@dataclass(frozen=True)
class _Tangent:
    slope: object | None
    exponent: int
    factor: object | None = None
    degree: int = 1


@dataclass(frozen=True)
class Resolution:
    tree: ClusterTree
    branches: tuple[BranchClass, ...]

    @property
    def multiplicity(self) -> int:
        return self.tree.root.multiplicity

    @property
    def delta(self) -> int:
        return self.tree.delta

    @property
    def branch_count(self) -> int:
        return sum(b.packet for b in self.branches)

    def to_json(self) -> dict:
        return {
            "multiplicity": self.multiplicity,
            "delta": self.delta,
            "branches": self.branch_count,
            "branch_classes": [b.to_json() for b in self.branches],
            "tree": self.tree.to_json(),
        }


def _order_within(germ: MultiPoly, budget: int) -> int:
    if germ.is_zero or germ.order > budget:
        raise _Exhausted()
    return germ.order


def _tangents(cone: MultiPoly) -> list[_Tangent]:
    """Directions of a homogeneous form, by irreducible factor."""
    m = cone.degree
    ring = poly_ring(("t",), cone.field)
    u = ring.dtype({(b,): c for (a, b), c in cone.terms().items()})
    deg_t = u.degree()
    out = []
    if m - deg_t > 0:
        out.append(_Tangent(None, m - deg_t))
    if deg_t > 0:
        _, factors = u.factor_list()
        for fac, e in factors:
            d = fac.degree()
            if d == 1:
                a, b = fac.coeff(ring.gens[0]), fac.coeff(1)
                out.append(_Tangent(-b / a, e))
            else:
                out.append(_Tangent(None, e, fac, d))
    return out


def _blow_up(germ: MultiPoly, slope, mult: int, budget: int) -> MultiPoly:
    """Strict transform in the chart of ``slope`` (None: the infinite chart)."""
    fld = germ.field
    x = MultiPoly.gen(0, germ.variables, fld)
    y = MultiPoly.gen(1, germ.variables, fld)
    if slope is None:
        moved = germ.compose([x * y, y], order=budget)
        shift = (0, mult)
    else:
        moved = germ.compose([x, x * (y + slope)], order=budget)
        shift = (mult, 0)
    data = {}
    for (a, b), c in moved.terms().items():
        if a < shift[0] or b < shift[1]:
            raise InvariantBreach("total transform is not divisible by the exceptional divisor")
        data[(a - shift[0], b - shift[1])] = c
    return MultiPoly(moved.ring.dtype(data), fld)


def _slope_text(slope, fld: ScalarField) -> str:
    return INFINITE if slope is None else fld.to_text(slope)


def _along_divisor(slope, divisors: dict[int, str]) -> bool:
    if slope is None:
        return "x" in divisors.values()
    return not slope and "y" in divisors.values()


def _child(point: _Point, tangent: _Tangent, index: int, germs: list[MultiPoly], mults: list[int]) -> _Point:
    fld = point.field
    packet = point.packet
    slope = tangent.slope
    if tangent.factor is not None:
        fld, slope = fld.residue_field(tangent.factor)
        germs = [g.with_field(fld) for g in germs]
        packet *= tangent.degree
    moved = [_blow_up(g, slope, m, b) for g, m, b in zip(germs, mults, point.budgets)]
    budgets = [b - m for b, m in zip(point.budgets, mults)]
    return _Point(
        index=index,
        parent=point.index,
        direction=_slope_text(slope, fld),
        divisors=_child_divisors(point.index, point.divisors, slope),
        field=fld,
        packet=packet,
        germs=moved,
        budgets=budgets,
    )


def _walk_single(local: MultiPoly, budget: int) -> tuple[list[_Point], list[tuple[int, int]]]:
    """Essential points of one germ and its exits (vertex, branch count)."""
    root = _Point(0, None, None, {}, local.field, 1, [local.truncate(budget)], [budget])
    root.orders = [_order_within(root.germs[0], budget)]
    points = [root]
    exits: list[tuple[int, int]] = []
    stack = [root]
    while stack:
        point = stack.pop(0)
        germ, m = point.germs[0], point.orders[0]
        for tangent in _tangents(germ.homogeneous(m)):
            along = tangent.factor is None and _along_divisor(tangent.slope, point.divisors)
            if tangent.exponent == 1 and not along:
                exits.append((point.index, point.packet * tangent.degree))
                continue
            child = _child(point, tangent, len(points), [germ], [m])
            child.orders = [_order_within(child.germs[0], child.budgets[0])]
            points.append(child)
            stack.append(child)
    return points, exits


def _budgets(settings: Settings) -> list[int]:
    orders, n = [], max(8, settings.initial_jet_order)
    while n < settings.jet_ceiling:
        orders.append(n)
        n *= 2
    orders.append(settings.jet_ceiling)
    return orders


def _tree_of(points: list[_Point], mult_of) -> ClusterTree:
    base = points[0].field
    vertices = tuple(
        ClusterVertex(
            p.parent,
            mult_of(p),
            p.direction,
            tuple(sorted(p.divisors)),
            p.packet,
            RATIONALS if p.field == base else p.field,
        )
        for p in points
    )
    return ClusterTree(vertices, base)


def resolve_germ(f: MultiPoly, center: Sequence | None = None, settings: Settings | None = None) -> Resolution:
    """Essential tree T* of the reduced germ f at its center, with branch classes."""
    settings = resolve(settings)
    if center is not None:
        f = f.at(center)
    if f.nvars != 2:
        raise ValueError("resolution needs a plane germ")
    local = f.local()
    if local.is_zero:
        raise NotReduced("the zero germ is not reduced")
    if local.coefficient((0, 0)):
        raise ValueError(f"{f.to_text()} does not vanish at {f.center}")
    if not is_reduced(f):
        raise NotReduced(f"{f.to_text()} is not reduced at its center")
    for budget in _budgets(settings):
        try:
            points, exits = _walk_single(local, budget)
        except _Exhausted:
            logger.debug("resolve: jet budget %d exhausted", budget)
            continue
        tree = _tree_of(points, lambda p: p.orders[0])
        branches = _branch_classes(tree, exits)
        _check_branch_sums(tree, branches)
        logger.debug("resolve: %d essential points, %d branches at budget %d",
                     len(tree.vertices), sum(b.packet for b in branches), budget)
        return Resolution(tree, branches)
    raise NonFiniteColength(f"resolution of {f.to_text()} not reached within jet order {settings.jet_ceiling}")


def _branch_classes(tree: ClusterTree, exits: list[tuple[int, int]]) -> tuple[BranchClass, ...]:
    out = []
    for vertex, count in exits:
        path = [vertex]
        while tree.vertices[path[-1]].parent is not None:
            path.append(tree.vertices[path[-1]].parent)
        path.reverse()
        mult = {vertex: 1}
        for i in range(len(path) - 2, -1, -1):
            p = path[i]
            mult[p] = sum(mult[q] for q in path[i + 1:] if p in tree.vertices[q].proximate)
        sequence = tuple(mult[p] for p in path) + (1,)
        if any(a < b for a, b in zip(sequence, sequence[1:])):
            raise InvariantBreach(f"branch multiplicities {sequence} increase along the path")
        out.append(BranchClass(tuple(path), sequence, count))
    return tuple(out)


def _check_branch_sums(tree: ClusterTree, branches: Iterable[BranchClass]) -> None:
    totals = [0] * len(tree.vertices)
    for b in branches:
        for p, m in zip(b.path, b.multiplicity_sequence):
            totals[p] += b.packet * m
    for i, v in enumerate(tree.vertices):
        if totals[i] != v.packet * v.multiplicity:
            raise InvariantBreach(
                f"branch multiplicities at vertex {i} sum to {totals[i]}, expected {v.packet * v.multiplicity}"
            )


def delta_invariant(f: MultiPoly, center: Sequence | None = None, settings: Settings | None = None) -> int:
    """delta from the multiplicity tree, checked against mu = 2 delta - r + 1."""
    if center is not None:
        f = f.at(center)
    res = resolve_germ(f, settings=settings)
    mu = milnor_number(f, settings)
    if mu != 2 * res.delta - res.branch_count + 1:
        raise InvariantBreach(
            f"Milnor formula fails for {f.to_text()}: mu={mu}, delta={res.delta}, r={res.branch_count}"
        )
    return res.delta


# ── pairs of germs ────────────────────────────────────────────────


def _common_tangents(first: list[_Tangent], second: list[_Tangent]) -> list[_Tangent]:
    out = []
    for t in first:
        for s in second:
            if t.factor is None and s.factor is None:
                same = (t.slope is None and s.slope is None) or (
                    t.slope is not None and s.slope is not None and t.slope == s.slope
                )
            elif t.factor is not None and s.factor is not None:
                same = t.factor.monic() == s.factor.monic()
            else:
                same = False
            if same:
                out.append(_Tangent(t.slope, min(t.exponent, s.exponent), t.factor, t.degree))
    return out


def _walk_pair(f: MultiPoly, g: MultiPoly, budget: int) -> list[_Point]:
    """Common infinitely near points of two germs through the origin."""
    root = _Point(0, None, None, {}, f.field, 1, [f.truncate(budget), g.truncate(budget)], [budget, budget])
    root.orders = [_order_within(h, budget) for h in root.germs]
    points = [root]
    stack = [root]
    while stack:
        point = stack.pop(0)
        cones = [h.homogeneous(m) for h, m in zip(point.germs, point.orders)]
        for tangent in _common_tangents(_tangents(cones[0]), _tangents(cones[1])):
            child = _child(point, tangent, len(points), point.germs, point.orders)
            child.orders = [_order_within(h, b) for h, b in zip(child.germs, child.budgets)]
            points.append(child)
            stack.append(child)
    return points


def common_points(f: MultiPoly, g: MultiPoly, settings: Settings | None = None) -> list[_Point]:
    settings = resolve(settings)
    fl, gl = f.local(), g.at(f.center).local()
    if fl.field != gl.field:
        raise ValueError("germs over different scalar fields")
    gcd = polynomial_gcd([f, g.at(f.center)])
    if gcd.degree > 0 and not gcd.evaluate(f.center):
        raise CommonComponent(f"{f.to_text()} and {g.to_text()} share a component through the center")
    for budget in _budgets(settings):
        try:
            return _walk_pair(fl, gl, budget)
        except _Exhausted:
            logger.debug("common points: jet budget %d exhausted", budget)
    raise NonFiniteColength(f"common points not separated within jet order {settings.jet_ceiling}")


def common_tree(f: MultiPoly, g: MultiPoly, settings: Settings | None = None) -> ClusterTree:
    """Common infinitely near points with the smaller multiplicity at each."""
    points = common_points(f, g, settings)
    return _tree_of(points, lambda p: min(p.orders))


def noether_sum(f: MultiPoly, g: MultiPoly, settings: Settings | None = None) -> int:
    """Sum of m_p(f) * m_p(g) over common infinitely near points, packets counted fully."""
    if f.local().coefficient((0, 0)) or g.at(f.center).local().coefficient((0, 0)):
        return 0
    return sum(p.packet * p.orders[0] * p.orders[1] for p in common_points(f, g, settings))


def intersection_multiplicity(
    f: MultiPoly,
    g: MultiPoly,
    center: Sequence | None = None,
    seed: int = 0,
    settings: Settings | None = None,
) -> int:
    """i_z(f, g) by Noether's formula over common infinitely near points,
    cross-checked with the order of a resultant after a generic shear."""
    settings = resolve(settings)
    if center is not None:
        f, g = f.at(center), g.at(center)
    g = g.at(f.center)
    fl, gl = f.local(), g.local()
    if fl.coefficient((0, 0)) or gl.coefficient((0, 0)):
        return 0
    oracle = eliminant_intersection(fl, gl, seed, settings)
    noether = noether_sum(f, g, settings)
    if noether != oracle:
        raise InvariantBreach(
            f"intersection of {f.to_text()} and {g.to_text()}: Noether sum {noether} != resultant order {oracle}"
        )
    return noether


def eliminant_intersection(f: MultiPoly, g: MultiPoly, seed: int = 0, settings: Settings | None = None) -> int:
    """Order at x = 0 of Res_y after shears x -> x + s*y; the minimum over shears."""
    settings = resolve(settings)
    gcd = polynomial_gcd([f, g])
    if gcd.degree > 0 and not gcd.evaluate((0, 0)):
        raise CommonComponent(f"{f.to_text()} and {g.to_text()} share a component through the origin")
    rng = random.Random(seed)
    fld = f.field
    x, y = MultiPoly.gen(0, PLANE, fld), MultiPoly.gen(1, PLANE, fld)
    best = None
    for attempt in range(settings.shear_attempts + 1):
        s = 0 if attempt == 0 else rng.randint(-settings.coefficient_height, settings.coefficient_height)
        sheared = [h.with_variables(PLANE).compose([x + y * s, y]) for h in (f, g)]
        if any(h.degree_in(1) <= 0 for h in sheared):
            continue
        if not any(_leading_y(h).evaluate((0, 0)) for h in sheared):
            continue
        res = eliminant(sheared[0], sheared[1], 1)
        if res.is_zero:
            raise CommonComponent("resultant vanishes identically")
        value = res.order
        best = value if best is None else min(best, value)
    if best is None:
        raise GenericityFailure("no admissible shear for the resultant oracle")
    return best


def _leading_y(h: MultiPoly) -> MultiPoly:
    top = h.degree_in(1)
    return MultiPoly.from_terms({(a, 0): c for (a, b), c in h.terms().items() if b == top}, h.variables, h.field)


# ── cluster schemes ───────────────────────────────────────────────


def cluster_of_ideal(ideal: JetIdeal, seed: int, settings: Settings | None = None) -> ClusterTree:
    """Z_cl: common points of two generic elements, confirmed by a third."""
    if ideal.nvars != 2:
        raise ValueError("cluster subschemes are computed for plane schemes")
    if ideal.colength < 1:
        raise ValueError("the unit ideal has no cluster subscheme")
    samples = [sample_ideal_element(ideal, seed * 3 + k, settings) for k in range(3)]
    try:
        first = common_tree(samples[0], samples[1], settings)
        check = common_tree(samples[0], samples[2], settings)
    except CommonComponent as exc:
        raise GenericityFailure(f"sampled ideal elements share a component (seed {seed})") from exc
    if _tree_key(first) != _tree_key(check):
        raise GenericityFailure(f"third sample disagrees on the cluster subscheme (seed {seed})")
    return first


def _tree_key(tree: ClusterTree) -> set:
    return {(path, tree.vertices[i].multiplicity, tree.vertices[i].packet) for path, i in tree.path_keys().items()}


def cluster_ideal(
    tree: ClusterTree,
    center: Sequence | None = None,
    base: ScalarField = RATIONALS,
    variables: Sequence[str] = PLANE,
) -> JetIdeal:
    """The cluster ideal of germs whose virtual transforms have multiplicity
    at least m(q) at every vertex q."""
    if not tree.has_directions:
        raise ValueError("a cluster ideal needs the directions of every vertex")
    tree.check_proximity()
    needed = _needed_orders(tree)
    order = needed[0] + 1
    space = jet_space(2, order)
    one = tree.field_of(0).domain.one
    form = {mono: {col: one} for col, mono in enumerate(space.monomials) if sum(mono) < needed[0]}
    conditions: list[tuple[dict, ScalarField]] = []
    stack = [(0, form)]
    while stack:
        index, form = stack.pop()
        fld = tree.field_of(index)
        m = tree.vertices[index].multiplicity
        for mono, lin in form.items():
            if sum(mono) < m and lin:
                conditions.append((lin, fld))
        for child in tree.children[index]:
            vertex = tree.vertices[child]
            target = tree.field_of(child)
            moved = _embed_form(form, fld, target)
            slope = None if vertex.direction == INFINITE else target.parse(vertex.direction)
            stack.append((child, _transform_form(moved, m, slope, needed[child], target.domain)))
    rows = _rationalize(conditions, base)
    kernel = nullspace(rows, space.dimension, base.domain)
    ideal = JetIdeal.from_rows(kernel, space, variables, base, center)
    if ideal.colength != tree.degree:
        raise InvariantBreach(f"cluster ideal has colength {ideal.colength}, tree degree {tree.degree}")
    return ideal


def _needed_orders(tree: ClusterTree) -> list[int]:
    need = [0] * len(tree.vertices)
    for i in range(len(tree.vertices) - 1, -1, -1):
        m = tree.vertices[i].multiplicity
        below = [need[c] for c in tree.children[i]]
        need[i] = max([m] + [d + m for d in below])
    return need


def _transform_form(form: dict, m: int, slope, limit: int, dom) -> dict:
    """Virtual transform of a polynomial with linear-form coefficients."""
    out: dict = {}

    def add(mono, lin, scale):
        target = out.setdefault(mono, {})
        for col, v in lin.items():
            nv = target.get(col, dom.zero) + scale * v
            if nv:
                target[col] = nv
            else:
                target.pop(col, None)

    for (a, b), lin in form.items():
        if a + b < m:
            continue
        if slope is None:
            mono = (a, a + b - m)
            if sum(mono) < limit:
                add(mono, lin, dom.one)
            continue
        shifted = a + b - m
        # (y + slope)^b = sum_j C(b, j) slope^(b-j) y^j
        powers = [dom.one]
        for _ in range(b):
            powers.append(powers[-1] * slope)
        for j in range(b + 1):
            if shifted + j >= limit:
                break
            coeff = dom.convert(comb(b, j)) * powers[b - j]
            if coeff:
                add((shifted, j), lin, coeff)
    return {mono: lin for mono, lin in out.items() if lin}


def _embed_form(form: dict, source: ScalarField, target: ScalarField) -> dict:
    if source == target:
        return form
    return {mono: {col: source.embed(v, target) for col, v in lin.items()} for mono, lin in form.items()}


def _rationalize(conditions: list[tuple[dict, ScalarField]], base: ScalarField) -> list[dict]:
    """Conditions over residue fields as conditions over ``base``, one per rational coordinate."""
    rows = []
    for lin, fld in conditions:
        if fld == base:
            rows.append(lin)
        elif fld.is_rational:
            rows.append({col: base.convert(fld.coordinates(v)[0]) for col, v in lin.items()})
        elif base.is_rational:
            parts: dict[int, dict] = {}
            for col, v in lin.items():
                for k, c in enumerate(fld.coordinates(v)):
                    if c:
                        parts.setdefault(k, {})[col] = base.convert(c)
            rows.extend(parts.values())
        else:
            raise ExtensionDepth(f"cluster over {fld.describe()} cannot descend to {base.describe()}")
    return rows


def tree_text(tree: ClusterTree) -> str:
    """Compact rendering such as ``z(2) z>q1(1) q1>q2(1)``."""
    parts = []
    for i, v in enumerate(tree.vertices):
        name = "z" if i == 0 else f"q{i}"
        packet = f"x{v.packet}" if v.packet > 1 else ""
        parent = "" if v.parent is None else ("z" if v.parent == 0 else f"q{v.parent}") + ">"
        parts.append(f"{parent}{name}({v.multiplicity}){packet}")
    return " ".join(parts)
