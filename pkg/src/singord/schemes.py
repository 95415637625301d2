"""Zero-dimensional schemes in the plane: one certified jet ideal per point.

Constructors cover the curve schemes (S, S1, ES), the analytic and critical
ones derived from membership ideals (EA, A, A1, CRIT0, CRIT), fat points and
cluster schemes given by a tree. A point may carry the cluster tree it was
built from; otherwise its cluster subscheme is found by sampling.
"""
import logging
import random
from dataclasses import dataclass
from typing import Sequence

from .arith.poly import PLANE, MultiPoly
from .arith.scalars import RATIONALS, ScalarField
from .config import Settings, resolve
from .errors import (
    GenericityFailure,
    InvariantBreach,
    ModeUnsupported,
    NonFiniteColength,
    NonInvertible,
    NotReduced,
    OverlappingSupport,
    ParseError,
    SymbolicPosition,
)
from .local.invariants import classify_simple, derived_ideal, sample_ideal_element, tjurina_ideal
from .local.jets import JetIdeal, jet_space, maximal_ideal
from .puiseux import ClusterTree, ClusterVertex, cluster_ideal, cluster_of_ideal, resolve_germ

logger = logging.getLogger(__name__)

GENERIC = "GENERIC"
SCHEME_KINDS = ("es", "s", "s1", "ea", "a", "a1", "crit0", "crit", "fat", "cluster")
MODES = ("iso", "def")


# ── values ────────────────────────────────────────────────────────


@dataclass(frozen=True)
class SchemePoint:
    """One point of a scheme. ``position`` None stands for a GENERIC position."""

    position: tuple | None
    ideal: JetIdeal
    cluster: ClusterTree | None = None
    germ: MultiPoly | None = None

    def __post_init__(self):
        if self.cluster is not None and self.cluster.degree != self.ideal.colength:
            raise InvariantBreach(
                f"cluster degree {self.cluster.degree} differs from ideal colength {self.ideal.colength}"
            )

    @property
    def colength(self) -> int:
        return self.ideal.colength

    def cluster_tree(self, seed: int = 0, settings: Settings | None = None) -> ClusterTree:
        """The tree of Z_cl at this point."""
        if self.cluster is not None:
            return self.cluster
        return cluster_of_ideal(self.ideal, seed, settings)


@dataclass(frozen=True)
class ZeroDimScheme:
    points: tuple[SchemePoint, ...] = ()
    provenance: str = "empty"
    field: ScalarField = RATIONALS

    def __post_init__(self):
        seen = set()
        for p in self.points:
            if p.position is None:
                continue
            key = tuple(self.field.to_text(c) for c in p.position)
            if key in seen:
                raise OverlappingSupport(f"two scheme points at {list(key)}")
            seen.add(key)

    @property
    def degree(self) -> int:
        return sum(p.colength for p in self.points)

    @property
    def is_empty(self) -> bool:
        return not self.points

    @property
    def has_explicit_positions(self) -> bool:
        return all(p.position is not None for p in self.points)

    def require_positions(self) -> None:
        if not self.has_explicit_positions:
            raise SymbolicPosition(f"scheme {self.provenance} has GENERIC positions; sample a representative first")

    def trees(self, seed: int = 0, settings: Settings | None = None) -> list[ClusterTree]:
        return [p.cluster_tree(seed * 7 + i, settings) for i, p in enumerate(self.points)]

    def m2(self, seed: int = 0, settings: Settings | None = None) -> int:
        """M2 = sum of squared multiplicities over Z_cl, with deg <= M2 < 2 deg checked per point."""
        total = 0
        for point, tree in zip(self.points, self.trees(seed, settings)):
            value = tree.m2
            if not point.colength <= value < 2 * point.colength:
                raise InvariantBreach(
                    f"sandwich deg <= M2 < 2 deg fails: deg={point.colength}, M2={value} ({self.provenance})"
                )
            total += value
        return total


# ── lines and automorphisms ───────────────────────────────────────


def psi_m(m: int, epsilon=1, field: ScalarField = RATIONALS) -> list[MultiPoly]:
    """The automorphism (x, y) -> (x, y + epsilon*x^m)."""
    x = MultiPoly.gen(0, PLANE, field)
    y = MultiPoly.gen(1, PLANE, field)
    return [x, y + x**m * field.convert(epsilon)]


def generic_line(center: Sequence, seed: int, avoid: MultiPoly | None = None,
                 settings: Settings | None = None, field: ScalarField = RATIONALS) -> MultiPoly:
    """Seeded line through ``center``, re-sampled while tangent to ``avoid``."""
    settings = resolve(settings)
    rng = random.Random(seed)
    h = settings.coefficient_height
    cone = avoid.local().initial_form() if avoid is not None else None
    for _ in range(settings.max_resamples):
        a, b = rng.randint(-h, h), rng.randint(-h, h)
        if not (a or b):
            continue
        # the line a*x + b*y = 0 points along (b, -a)
        if cone is not None and not cone.evaluate((b, -a)):
            continue
        local = MultiPoly.from_terms({(1, 0): a, (0, 1): b}, PLANE, field)
        return local.translate([-c for c in center]).at(center)
    raise GenericityFailure(f"no line through {list(center)} transverse to the germ")


def random_local_automorphism(rng: random.Random, settings: Settings, field: ScalarField = RATIONALS,
                              degree: int = 3) -> list[MultiPoly]:
    """Origin-fixing map with invertible linear part and small higher terms."""
    h = settings.coefficient_height
    for _ in range(settings.max_resamples):
        a, b, c, d = (rng.randint(-h, h) for _ in range(4))
        if a * d - b * c:
            break
    else:
        raise GenericityFailure("no invertible linear part sampled")
    out = []
    for lin in ((a, b), (c, d)):
        terms = {(1, 0): lin[0], (0, 1): lin[1]}
        for k in range(2, degree + 1):
            for i in range(k + 1):
                terms[(k - i, i)] = rng.randint(-2, 2)
        out.append(MultiPoly.from_terms(terms, PLANE, field))
    return out


def _linear_part(phi: Sequence[MultiPoly]) -> list[list]:
    return [[p.coefficient((1, 0)), p.coefficient((0, 1))] for p in phi]


def _local_map(phi: Sequence[MultiPoly], source: Sequence, target: Sequence) -> list[MultiPoly]:
    """phi(source + X) - target, as maps in local coordinates."""
    return [p.translate(source) - t for p, t in zip(phi, target)]


def _preimage(phi: Sequence[MultiPoly], point: tuple, field: ScalarField) -> tuple:
    images = tuple(p.evaluate(point) for p in phi)
    if images == tuple(point):
        return tuple(point)
    if any(p.degree > 1 for p in phi):
        raise NonInvertible("a non-affine map must fix the scheme points it moves")
    (a, b), (c, d) = _linear_part([p.with_field(field) for p in phi])
    det = a * d - b * c
    if not det:
        raise NonInvertible("linear part is singular")
    r0 = point[0] - phi[0].coefficient((0, 0))
    r1 = point[1] - phi[1].coefficient((0, 0))
    return ((d * r0 - b * r1) / det, (a * r1 - c * r0) / det)


def apply_automorphism(scheme: ZeroDimScheme, phi: Sequence[MultiPoly]) -> ZeroDimScheme:
    """The preimage of the scheme under the plane map ``phi``."""
    fld = scheme.field
    phi = [p.with_field(fld) for p in phi]
    moved = []
    for point in scheme.points:
        if point.position is None:
            raise SymbolicPosition("cannot move a point at a GENERIC position")
        source = _preimage(phi, point.position, fld)
        local = _local_map(phi, source, point.position)
        (a, b), (c, d) = _linear_part(local)
        if not a * d - b * c:
            raise NonInvertible(f"map is not invertible at {[fld.to_text(v) for v in source]}")
        ideal = point.ideal.pullback(local).moved(source)
        germ = point.germ.compose(phi).at(source) if point.germ is not None else None
        cluster = point.cluster.without_directions() if point.cluster is not None else None
        moved.append(SchemePoint(source, ideal, cluster, germ))
    return ZeroDimScheme(tuple(moved), f"phi*({scheme.provenance})", fld)


# ── constructors ──────────────────────────────────────────────────


def build_scheme(
    source: MultiPoly | ClusterTree | None,
    kind: str,
    position: Sequence | str | None = None,
    *,
    m: int | None = None,
    seed: int = 0,
    settings: Settings | None = None,
) -> ZeroDimScheme:
    """Single-point scheme of the requested kind.

    ``source`` is a germ for the curve and critical kinds, a tree for CLUSTER,
    and ignored for FAT. ``position`` defaults to the germ's center;
    ``"GENERIC"`` is accepted for FAT and CLUSTER.
    """
    settings = resolve(settings)
    kind = kind.lower()
    if kind not in SCHEME_KINDS:
        raise ValueError(f"unknown scheme kind {kind!r}; expected one of {SCHEME_KINDS}")
    generic = isinstance(position, str) and position.upper() == GENERIC
    if kind == "fat":
        if not m or m < 1:
            raise ValueError("a fat point needs m >= 1")
        center = _center(position, generic)
        tree = ClusterTree((ClusterVertex(None, m),))
        point = SchemePoint(None if generic else center, maximal_ideal(2, m, RATIONALS, center), tree)
        return ZeroDimScheme((point,), f"FAT({m})")
    if kind == "cluster":
        if not isinstance(source, ClusterTree):
            raise ValueError("kind CLUSTER needs a cluster tree")
        center = _center(position, generic)
        point = SchemePoint(None if generic else center, cluster_ideal(source, center), source)
        return ZeroDimScheme((point,), "CLUSTER")
    if generic:
        raise SymbolicPosition(f"kind {kind.upper()} is built at the germ's own point")
    if not isinstance(source, MultiPoly):
        raise ValueError(f"kind {kind.upper()} needs a polynomial germ")
    f = source.at(position) if position is not None else source
    point = _germ_point(f, kind, seed, settings)
    return ZeroDimScheme((point,), f"{kind.upper()}({f.to_text()})", f.field)


def _center(position, generic: bool) -> tuple:
    if generic or position is None:
        return (RATIONALS.domain.zero,) * 2
    return tuple(RATIONALS.convert(c) if not isinstance(c, str) else RATIONALS.parse(c) for c in position)


def _germ_point(f: MultiPoly, kind: str, seed: int, settings: Settings) -> SchemePoint:
    center = f.center
    if kind in ("a", "a1") and classify_simple(f, settings) is not None:
        kind = "s" if kind == "a" else "s1"
        logger.debug("simple germ: using the curve scheme %s", kind.upper())
    if kind == "s":
        tree = resolve_germ(f, settings=settings).tree
        return SchemePoint(center, cluster_ideal(tree, center, f.field), tree, f)
    if kind == "s1":
        line = generic_line(center, seed, f, settings, f.field)
        tree = resolve_germ(line * f, settings=settings).tree
        return SchemePoint(center, cluster_ideal(tree, center, f.field), tree, f)
    if kind == "es":
        tree = resolve_germ(f, settings=settings).tree
        ideal = tjurina_ideal(f, settings) + cluster_ideal(tree, center, f.field)
        return SchemePoint(center, ideal, None, f)
    return SchemePoint(center, derived_ideal(f, kind, settings), None, f)


def union(first: ZeroDimScheme, second: ZeroDimScheme) -> ZeroDimScheme:
    if first.is_empty:
        return second
    if second.is_empty:
        return first
    if first.field != second.field:
        raise ValueError("schemes over different scalar fields")
    return ZeroDimScheme(first.points + second.points, f"{first.provenance} + {second.provenance}", first.field)


def union_all(schemes: Sequence[ZeroDimScheme]) -> ZeroDimScheme:
    out = ZeroDimScheme()
    for s in schemes:
        out = union(out, s)
    return out


# ── residue ───────────────────────────────────────────────────────


def residue(scheme: ZeroDimScheme, line: MultiPoly) -> tuple[ZeroDimScheme, int]:
    """The residual scheme Z:L and deg(Z cap L)."""
    if line.degree != 1:
        raise ValueError(f"{line.to_text()} is not a line")
    scheme.require_positions()
    kept = []
    for point in scheme.points:
        if line.evaluate(point.position):
            kept.append(point)
            continue
        ell = line.at(point.position).local().with_field(point.ideal.field)
        quotient = point.ideal.quotient(ell)
        if quotient is not None:
            kept.append(SchemePoint(point.position, quotient, None, None))
    result = ZeroDimScheme(tuple(kept), f"({scheme.provenance}):L", scheme.field)
    return result, scheme.degree - result.degree


# ── sampling ──────────────────────────────────────────────────────


def _random_position(rng: random.Random, used: set, settings: Settings) -> tuple:
    h = settings.coefficient_height
    for _ in range(settings.max_resamples):
        pos = (rng.randint(-h, h), rng.randint(-h, h))
        if pos not in used:
            used.add(pos)
            return tuple(RATIONALS.convert(c) for c in pos)
    raise GenericityFailure("no free position left for a scheme point")


def sample_representative(scheme: ZeroDimScheme, mode: str, seed: int,
                          settings: Settings | None = None) -> ZeroDimScheme:
    """A random member of Iso(Z) (``iso``) or of the cluster deformation class (``def``)."""
    settings = resolve(settings)
    mode = mode.lower()
    if mode not in MODES:
        raise ValueError(f"unknown sampling mode {mode!r}; expected one of {MODES}")
    if scheme.field != RATIONALS:
        raise ModeUnsupported("sampling is implemented for schemes over QQ")
    rng = random.Random(seed)
    used: set = set()
    points = []
    for k, point in enumerate(scheme.points):
        position = _random_position(rng, used, settings)
        if mode == "iso":
            phi = random_local_automorphism(rng, settings)
            ideal = point.ideal.pullback(phi).moved(position)
            cluster = point.cluster.without_directions() if point.cluster is not None else None
            points.append(SchemePoint(position, ideal, cluster, None))
        else:
            points.append(_deformed_point(point, position, rng, settings))
    return ZeroDimScheme(tuple(points), f"{mode.upper()}[{seed}]({scheme.provenance})", scheme.field)


def _deformed_point(point: SchemePoint, position: tuple, rng: random.Random, settings: Settings) -> SchemePoint:
    if point.cluster is None or point.ideal.colength != point.cluster.degree:
        raise ModeUnsupported("deformation sampling needs a cluster-presented point")
    target = point.cluster.shape()
    for attempt in range(settings.max_resamples):
        g = sample_ideal_element(point.ideal, rng.randrange(1 << 30), settings).local()
        if g.is_zero:
            continue
        phi = random_local_automorphism(rng, settings)
        moved = g.compose(phi, order=point.ideal.jet_order + 1)
        try:
            tree = resolve_germ(moved, settings=settings).tree
        except (ValueError, NotReduced, NonFiniteColength) as exc:
            logger.debug("deformation sample %d rejected: %s", attempt, exc)
            continue
        if tree.shape() != target:
            logger.debug("deformation sample %d has a different tree", attempt)
            continue
        germ = moved.translate([-c for c in position]).at(position)
        return SchemePoint(position, cluster_ideal(tree, position), tree, germ)
    raise GenericityFailure(f"no generic germ with the cluster's tree after {settings.max_resamples} samples")


# ── serialization ─────────────────────────────────────────────────


def point_to_json(point: SchemePoint, fld: ScalarField) -> dict:
    ideal = point.ideal
    return {
        "position": GENERIC if point.position is None else [fld.to_text(c) for c in point.position],
        "colength": ideal.colength,
        "jet_order": ideal.jet_order,
        "certificate": ideal.certificate,
        "subspace_rows": [[[j, fld.to_text(c)] for j, c in row] for row in ideal.rows],
        "cluster": point.cluster.to_json() if point.cluster is not None else None,
        "germ": point.germ.to_text() if point.germ is not None else None,
    }


def scheme_to_json(scheme: ZeroDimScheme) -> dict:
    return {
        "provenance": scheme.provenance,
        "field": scheme.field.to_json(),
        "degree": scheme.degree,
        "points": [point_to_json(p, scheme.field) for p in scheme.points],
    }


def scheme_from_json(data: dict | list, settings: Settings | None = None) -> ZeroDimScheme:
    """Read a serialized scheme, or build one from recipes.

    A recipe is ``{"kind": "s", "germ": "y^2 - x^3", "position": [1, 0]}``,
    ``{"kind": "fat", "m": 3}`` or ``{"kind": "cluster", "tree": {...}}``.
    A list of recipes or a ``{"union": [...]}`` record is a union. The output
    of the ``scheme`` command, which wraps the record under ``"scheme"``, is
    accepted as is.
    """
    if isinstance(data, list):
        return union_all([scheme_from_json(item, settings) for item in data])
    if not isinstance(data, dict):
        raise ParseError(f"expected a scheme record, got {type(data).__name__}")
    if "scheme" in data:
        return scheme_from_json(data["scheme"], settings)
    if "union" in data:
        return union_all([scheme_from_json(item, settings) for item in data["union"]])
    if "kind" in data:
        return _from_recipe(data, settings)
    if "points" not in data:
        raise ParseError("scheme record needs 'points', 'kind' or 'union'")
    fld = ScalarField.from_json(data.get("field"))
    points = []
    for item in data["points"]:
        points.append(_point_from_json(item, fld))
    return ZeroDimScheme(tuple(points), str(data.get("provenance", "file")), fld)


def _point_from_json(item: dict, fld: ScalarField) -> SchemePoint:
    try:
        raw_position = item["position"]
        order = int(item["jet_order"])
        rows = [{int(j): fld.parse(str(c)) for j, c in row} for row in item["subspace_rows"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed scheme point: {exc}") from exc
    position = None if raw_position == GENERIC else tuple(fld.parse(str(c)) for c in raw_position)
    center = position or (fld.domain.zero,) * 2
    ideal = JetIdeal.from_rows(rows, jet_space(2, order), PLANE, fld, center)
    cluster = ClusterTree.from_json(item["cluster"]) if item.get("cluster") else None
    germ = MultiPoly.parse(item["germ"], PLANE, fld, center) if item.get("germ") else None
    return SchemePoint(position, ideal, cluster, germ)


def _from_recipe(data: dict, settings: Settings | None) -> ZeroDimScheme:
    kind = str(data["kind"]).lower()
    position = data.get("position")
    seed = int(data.get("seed", 0))
    if kind == "fat":
        return build_scheme(None, "fat", position, m=int(data.get("m", 1)), settings=settings)
    if kind == "cluster":
        return build_scheme(ClusterTree.from_json(data["tree"]), "cluster", position, settings=settings)
    if "germ" not in data:
        raise ParseError(f"recipe of kind {kind!r} needs a 'germ'")
    # the recipe germ is local; it is moved to the requested point
    germ = MultiPoly.parse(str(data["germ"]), PLANE)
    if position is not None and not isinstance(position, str):
        position = [RATIONALS.parse(str(c)) for c in position]
        germ = germ.translate([-c for c in position]).at(position)
    return build_scheme(germ, kind, position, seed=seed, settings=settings)

