"""Conditions imposed by a scheme on plane curves of degree n.

A degree-n form is read in the affine chart through its coefficients on the
monomials x^a y^b with a + b <= n. Each point contributes one row per
quotient monomial of its ideal: the normal form of the column monomial,
expanded at the point.
"""
import logging
from dataclasses import dataclass, field as dataclass_field
from math import comb

from .arith.linalg import SparseRow, nullspace, rank
from .arith.poly import PLANE, MultiPoly, monomials
from .config import Settings, resolve
from .errors import InvariantBreach
from .schemes import SchemePoint, ZeroDimScheme, residue, sample_representative

logger = logging.getLogger(__name__)


def form_count(n: int) -> int:
    return (n + 1) * (n + 2) // 2 if n >= 0 else 0


@dataclass(frozen=True)
class ConditionMatrix:
    degree: int
    rows: tuple
    ncols: int
    domain: object

    @property
    def rank(self) -> int:
        return rank(list(self.rows), self.ncols, self.domain)

    def kernel(self) -> list[SparseRow]:
        return nullspace(list(self.rows), self.ncols, self.domain)


def _local_normal_forms(point: SchemePoint) -> dict[tuple[int, int], SparseRow]:
    """NF of every local monomial below the certificate; higher ones vanish."""
    ideal = point.ideal
    space = ideal.space
    one = ideal.field.domain.one
    out = {}
    for mono in monomials(2, ideal.certificate - 1):
        out[mono] = ideal.normal_form({space.index[mono]: one})
    return out


def condition_matrix(scheme: ZeroDimScheme, n: int) -> ConditionMatrix:
    scheme.require_positions()
    columns = monomials(2, n)
    dom = scheme.field.domain
    rows: list[SparseRow] = []
    for point in scheme.points:
        ideal = point.ideal
        qcols = ideal.quotient_columns
        forms = _local_normal_forms(point)
        p0, p1 = (scheme.field.convert(c) for c in point.position)
        block = {q: {} for q in qcols}
        for col, (a, b) in enumerate(columns):
            image: dict = {}
            for (i, j), nf in forms.items():
                if i > a or j > b or not nf:
                    continue
                c = dom.convert(comb(a, i) * comb(b, j)) * p0 ** (a - i) * p1 ** (b - j)
                if not c:
                    continue
                for q, v in nf.items():
                    image[q] = image.get(q, dom.zero) + c * v
            for q, v in image.items():
                if v:
                    block[q][col] = v
        rows.extend(r for r in block.values())
    return ConditionMatrix(n, tuple(rows), len(columns), dom)


def cohomology(scheme: ZeroDimScheme, n: int) -> tuple[int, int]:
    """(h0, h1) of J_Z(n) on the plane."""
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    r = condition_matrix(scheme, n).rank
    return form_count(n) - r, scheme.degree - r


def interpolation_basis(scheme: ZeroDimScheme, n: int) -> list[MultiPoly]:
    """Basis of the polynomials of degree <= n through the scheme."""
    matrix = condition_matrix(scheme, n)
    columns = monomials(2, n)
    out = []
    for vec in matrix.kernel():
        out.append(MultiPoly.from_terms({columns[j]: v for j, v in vec.items()}, PLANE, scheme.field))
    return out


# ── Castelnuovo function ──────────────────────────────────────────


@dataclass(frozen=True)
class CastelnuovoProfile:
    degree: int
    ord0: int
    ord1: int
    values: tuple[int, ...]
    h0: tuple[int, ...]
    h1: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "deg": self.degree,
            "ord0": self.ord0,
            "ord1": self.ord1,
            "castelnuovo": list(self.values),
            "h0": list(self.h0),
            "h1": list(self.h1),
        }


def castelnuovo(scheme: ZeroDimScheme) -> CastelnuovoProfile:
    """C(n) = h1(n-1) - h1(n) for n = 0..ord1+1, with its four properties checked."""
    deg = scheme.degree
    if deg == 0:
        return CastelnuovoProfile(0, 0, 0, (0,), (1,), (0,))
    h0s, h1s = [], []
    ord0 = ord1 = None
    n = 0
    while ord1 is None or n <= ord1 + 1 or ord0 is None:
        if n > deg + 1:
            raise InvariantBreach(f"h1 does not vanish by degree {deg + 1}")
        h0, h1 = cohomology(scheme, n)
        h0s.append(h0)
        h1s.append(h1)
        if ord0 is None and h0 > 0:
            ord0 = n
        if ord1 is None and h1 == 0:
            ord1 = n
        n += 1
    values = [(deg if k == 0 else h1s[k - 1]) - h1s[k] for k in range(len(h1s))]
    profile = CastelnuovoProfile(deg, ord0, ord1, tuple(values), tuple(h0s), tuple(h1s))
    _check_profile(profile)
    return profile


def _check_profile(p: CastelnuovoProfile) -> None:
    for n, c in enumerate(p.values):
        if n < p.ord0 and c != n + 1:
            raise InvariantBreach(f"C({n}) = {c}, expected {n + 1} below ord0 = {p.ord0}")
        if n and n >= p.ord0 and c > p.values[n - 1]:
            raise InvariantBreach(f"C({n}) = {c} exceeds C({n - 1}) = {p.values[n - 1]}")
        if n > p.ord1 and c != 0:
            raise InvariantBreach(f"C({n}) = {c} is nonzero above ord1 = {p.ord1}")
        previous = p.h0[n - 1] if n else 0
        if p.h0[n] - previous + c != n + 1:
            raise InvariantBreach(f"Euler bookkeeping fails at degree {n}")
    if sum(p.values) != p.degree:
        raise InvariantBreach(f"Castelnuovo values sum to {sum(p.values)}, not deg {p.degree}")


# ── generic orders ────────────────────────────────────────────────


@dataclass(frozen=True)
class GenericOrders:
    mode: str
    ord0: int
    ord1: int
    stable: bool
    trials: tuple = dataclass_field(default=())

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "ord0": self.ord0,
            "ord1": self.ord1,
            "stable": self.stable,
            "trials": [dict(t) for t in self.trials],
        }


def generic_orders(scheme: ZeroDimScheme, mode: str = "iso", trials: int | None = None,
                   seed: int = 0, settings: Settings | None = None) -> GenericOrders:
    """Max of ord0 and min of ord1 over seeded representatives."""
    settings = resolve(settings)
    trials = trials or settings.trials
    if trials < 1:
        raise ValueError("at least one trial is needed")
    table = []
    for t in range(trials):
        rep = sample_representative(scheme, mode, seed + t, settings)
        profile = castelnuovo(rep)
        table.append({"seed": seed + t, "ord0": profile.ord0, "ord1": profile.ord1})
        logger.debug("generic orders: trial %d ord0=%d ord1=%d", t, profile.ord0, profile.ord1)
    ord0 = max(row["ord0"] for row in table)
    ord1 = min(row["ord1"] for row in table)
    agreeing = sum(1 for row in table if row["ord1"] == ord1)
    stable = agreeing >= min(3, trials)
    return GenericOrders(mode.lower(), ord0, ord1, stable, tuple(tuple(sorted(r.items())) for r in table))


def residue_step_holds(scheme: ZeroDimScheme, line: MultiPoly, d: int) -> bool | None:
    """h1(J_Z(d)) = 0 whenever h1(J_{Z:L}(d-1)) = 0 and deg(Z cap L) <= d + 1.

    Returns None when the hypotheses do not apply.
    """
    rest, meet = residue(scheme, line)
    if meet > d + 1:
        return None
    if not rest.is_empty and (d < 1 or cohomology(rest, d - 1)[1] != 0):
        return None
    return cohomology(scheme, d)[1] == 0


def vanishes(scheme: ZeroDimScheme, n: int) -> bool:
    return scheme.is_empty or cohomology(scheme, n)[1] == 0


def first_vanishing(scheme: ZeroDimScheme, start: int = 0, stop: int | None = None) -> int:
    """Least n >= start with h1(J_Z(n)) = 0."""
    stop = scheme.degree + 1 if stop is None else stop
    for n in range(start, stop + 1):
        if vanishes(scheme, n):
            return n
    raise InvariantBreach(f"h1 does not vanish by degree {stop}")

