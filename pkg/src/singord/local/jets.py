"""Jet spaces and ideals of finite colength presented inside them.

A ``JetIdeal`` at order N stores a row-reduced basis of (I + m^(N+1)) / m^(N+1)
in the monomial basis of ``JetSpace(N)``. Columns ascend by total degree, so
the pivot of a row is its lowest-degree monomial. The certificate is the
smallest d with every monomial of degree d..N a pivot; then m^d lies in the
ideal itself (Nakayama), which makes colengths read off the jet model exact.
"""
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

from ..arith.linalg import SparseRow, nullspace, pivot_map, reduce_vector, row_reduce
from ..arith.poly import PLANE, SPACE, MultiPoly, monomials, poly_ring
from ..arith.scalars import RATIONALS, ScalarField
from ..config import Settings, resolve
from ..errors import NonFiniteColength, ZeroInput

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class JetSpace:
    nvars: int
    order: int

    @cached_property
    def monomials(self) -> list[tuple[int, ...]]:
        return monomials(self.nvars, self.order)

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {m: i for i, m in enumerate(self.monomials)}

    @cached_property
    def degree_starts(self) -> list[int]:
        """Column index of the first monomial of each degree 0..order+1."""
        starts, col = [], 0
        for d in range(self.order + 2):
            starts.append(col)
            col += len(monomials(self.nvars, d, d))
        return starts

    @property
    def dimension(self) -> int:
        return len(self.monomials)

    def degree_of(self, column: int) -> int:
        return sum(self.monomials[column])

    def vector(self, terms) -> SparseRow:
        """Truncated coefficient vector of a term map or local MultiPoly."""
        if isinstance(terms, MultiPoly):
            terms = terms.terms()
        index = self.index
        return {index[m]: c for m, c in terms.items() if c and sum(m) <= self.order}

    def shifted(self, terms: dict, mono: Sequence[int]) -> SparseRow:
        """Vector of ``x^mono * terms`` truncated at the order."""
        index, top = self.index, self.order
        shift = sum(mono)
        out = {}
        for m, c in terms.items():
            if sum(m) + shift <= top:
                out[index[tuple(a + b for a, b in zip(m, mono))]] = c
        return out

    def poly(self, vector: SparseRow, variables: Sequence[str], field: ScalarField) -> MultiPoly:
        ring = poly_ring(tuple(variables), field)
        return MultiPoly(ring.dtype({self.monomials[j]: c for j, c in vector.items() if c}), field)


@lru_cache(maxsize=None)
def jet_space(nvars: int, order: int) -> JetSpace:
    return JetSpace(nvars, order)


def _certificate(pivots: set[int], space: JetSpace) -> int:
    """Smallest d such that all monomials of degree d..order are pivots."""
    starts = space.degree_starts
    d = space.order
    while d >= 0 and all(j in pivots for j in range(starts[d], starts[d + 1])):
        d -= 1
    return d + 1


@dataclass(frozen=True)
class JetIdeal:
    variables: tuple[str, ...]
    field: ScalarField
    center: tuple
    jet_order: int
    rows: tuple[tuple[tuple[int, object], ...], ...]
    certificate: int

    # ── construction ──────────────────────────────────────────────

    @classmethod
    def from_rows(
        cls,
        rows: list[SparseRow],
        space: JetSpace,
        variables: Sequence[str],
        field: ScalarField,
        center: Sequence | None = None,
        reduced: bool = False,
    ) -> "JetIdeal":
        """Build from spanning vectors of the truncated ideal.

        Raises NonFiniteColength when the top two degrees are not covered.
        """
        basis = rows if reduced else row_reduce(rows, space.dimension, field.domain)
        pivots = {min(r) for r in basis}
        cert = _certificate(pivots, space)
        if cert > space.order - 1:
            raise NonFiniteColength(
                f"subspace at jet order {space.order} does not contain the top two degrees"
            )
        if center is None:
            center = (field.domain.zero,) * len(variables)
        return cls(
            variables=tuple(variables),
            field=field,
            center=tuple(center),
            jet_order=space.order,
            rows=tuple(tuple(sorted(r.items())) for r in sorted(basis, key=min)),
            certificate=cert,
        )

    # ── views ─────────────────────────────────────────────────────

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def space(self) -> JetSpace:
        return jet_space(self.nvars, self.jet_order)

    @cached_property
    def basis(self) -> list[SparseRow]:
        return [dict(r) for r in self.rows]

    @cached_property
    def pivots(self) -> frozenset[int]:
        return frozenset(r[0][0] for r in self.rows)

    @cached_property
    def pivot_rows(self) -> dict[int, SparseRow]:
        return pivot_map(self.basis)

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def colength(self) -> int:
        return self.space.dimension - self.rank

    @cached_property
    def quotient_columns(self) -> list[int]:
        return [j for j in range(self.space.dimension) if j not in self.pivots]

    @property
    def order(self) -> int:
        """Lowest degree of an element (mt of a generic element)."""
        if not self.rows:
            raise ZeroInput("the zero ideal has no order")
        return min(self.space.degree_of(r[0][0]) for r in self.rows)

    def generators(self) -> list[MultiPoly]:
        space = self.space
        return [space.poly(r, self.variables, self.field) for r in self.basis]

    # ── reduction ─────────────────────────────────────────────────

    def normal_form(self, vector: SparseRow) -> SparseRow:
        """Coordinates of ``vector`` modulo the ideal, on quotient columns."""
        return reduce_vector(vector, self.pivot_rows)

    def normal_form_of(self, local: MultiPoly) -> SparseRow:
        return self.normal_form(self.space.vector(local))

    def contains(self, local: MultiPoly) -> bool:
        return not self.normal_form_of(local)

    def is_closed(self) -> bool:
        """Ideal property in the jet model: x_i * row reduces to zero."""
        space = self.space
        for row in self.basis:
            terms = {space.monomials[j]: c for j, c in row.items()}
            for i in range(self.nvars):
                unit = tuple(1 if k == i else 0 for k in range(self.nvars))
                if self.normal_form(space.shifted(terms, unit)):
                    return False
        return True

    # ── change of presentation ────────────────────────────────────

    def at_order(self, order: int) -> "JetIdeal":
        """The same ideal presented in ``JetSpace(order)``; needs order > certificate."""
        if order == self.jet_order:
            return self
        if order <= self.certificate:
            raise ValueError(f"order {order} does not exceed certificate {self.certificate}")
        old, new = self.space, jet_space(self.nvars, order)
        rows = []
        for row in self.basis:
            kept = {
                new.index[old.monomials[j]]: c for j, c in row.items() if old.degree_of(j) <= order
            }
            if kept:
                rows.append(kept)
        if order > self.jet_order:
            one = self.field.domain.one
            rows.extend({j: one} for j in range(new.degree_starts[self.jet_order + 1], new.dimension))
        return JetIdeal(
            variables=self.variables,
            field=self.field,
            center=self.center,
            jet_order=order,
            rows=tuple(tuple(sorted(r.items())) for r in sorted(rows, key=min)),
            certificate=self.certificate,
        )

    def moved(self, center: Sequence) -> "JetIdeal":
        return JetIdeal(self.variables, self.field, tuple(center), self.jet_order, self.rows, self.certificate)

    def with_field(self, field: ScalarField) -> "JetIdeal":
        if field == self.field:
            return self
        rows = tuple(tuple((j, self.field.embed(c, field)) for j, c in r) for r in self.rows)
        center = tuple(self.field.embed(c, field) for c in self.center)
        return JetIdeal(self.variables, field, center, self.jet_order, rows, self.certificate)

    # ── ideal operations ──────────────────────────────────────────

    def __add__(self, other: "JetIdeal") -> "JetIdeal":
        order = max(self.jet_order, other.jet_order)
        a, b = self.at_order(order), other.at_order(order)
        return JetIdeal.from_rows(a.basis + b.basis, a.space, self.variables, self.field, self.center)

    def times_maximal(self) -> "JetIdeal":
        """The product m * I."""
        lifted = self.at_order(self.jet_order + 1)
        space = lifted.space
        rows = []
        for row in lifted.basis:
            terms = {space.monomials[j]: c for j, c in row.items()}
            for i in range(self.nvars):
                unit = tuple(1 if k == i else 0 for k in range(self.nvars))
                vec = space.shifted(terms, unit)
                if vec:
                    rows.append(vec)
        return JetIdeal.from_rows(rows, space, self.variables, self.field, self.center)

    def minimal_generator_count(self) -> int:
        return self.times_maximal().colength - self.colength

    def quotient(self, ell: MultiPoly) -> "JetIdeal | None":
        """The ideal quotient (I : ell) for a local form ell; None for the unit ideal."""
        space = self.space
        ell_terms = ell.terms()
        zero = self.field.domain.zero
        # x^a * ell lies in m^certificate once deg a >= certificate - 1
        top = space.degree_starts[max(self.certificate - 1, 0)]
        images = []
        for mono in space.monomials[:top]:
            product = {}
            for e, c in ell_terms.items():
                m = tuple(a + b for a, b in zip(mono, e))
                if sum(m) <= self.jet_order:
                    k = space.index[m]
                    product[k] = product.get(k, zero) + c
            images.append(self.normal_form({j: c for j, c in product.items() if c}))
        qcols = {j: k for k, j in enumerate(self.quotient_columns)}
        # columns of the linear map g -> NF(ell * g), one equation per quotient column
        equations: dict[int, SparseRow] = {}
        for col, image in enumerate(images):
            for j, c in image.items():
                equations.setdefault(qcols[j], {})[col] = c
        kernel = nullspace(list(equations.values()), space.dimension, self.field.domain)
        result = JetIdeal.from_rows(kernel, space, self.variables, self.field, self.center)
        if result.colength == 0:
            return None
        return result

    def pullback(self, phi: Sequence[MultiPoly]) -> "JetIdeal":
        """The ideal {g o phi : g in I} for a local automorphism jet phi fixing 0."""
        space = self.space
        rows = []
        for gen in self.generators():
            rows.append(space.vector(gen.compose(list(phi), order=self.jet_order)))
        for j in range(space.degree_starts[self.certificate], space.dimension):
            rows.append({j: self.field.domain.one})
        return JetIdeal.from_rows(rows, space, self.variables, self.field, self.center)


def close_ideal(
    generators: Sequence[MultiPoly],
    center: Sequence | None = None,
    settings: Settings | None = None,
    order: int | None = None,
) -> JetIdeal:
    """Certified jet presentation of the ideal generated at ``center``.

    Jet orders run 4, 8, 16, ... up to the configured ceiling unless a fixed
    ``order`` is requested.
    """
    settings = resolve(settings)
    gens = [g for g in generators if not g.is_zero]
    if not gens:
        raise ZeroInput("close_ideal needs a nonzero generator")
    field = gens[0].field
    variables = gens[0].variables
    if center is None:
        center = gens[0].center
    local = [g.at(center).local() for g in gens]
    orders = [order] if order is not None else _order_schedule(settings)
    last_error: NonFiniteColength | None = None
    for n in orders:
        space = jet_space(len(variables), n)
        rows = []
        for g in local:
            terms = g.truncate(n).terms()
            if not terms:
                continue
            low = min(sum(m) for m in terms)
            for mono in monomials(len(variables), n - low):
                vec = space.shifted(terms, mono)
                if vec:
                    rows.append(vec)
        try:
            ideal = JetIdeal.from_rows(rows, space, variables, field, center)
        except NonFiniteColength as exc:
            logger.debug("close_ideal: jet order %d not certified", n)
            last_error = exc
            continue
        logger.debug("close_ideal: certified at order %d (certificate %d, colength %d)",
                     n, ideal.certificate, ideal.colength)
        return ideal
    raise NonFiniteColength(
        f"ideal not certified up to jet order {orders[-1]}; the singularity may not be isolated"
    ) from last_error


def _order_schedule(settings: Settings) -> list[int]:
    orders, n = [], settings.initial_jet_order
    while n < settings.jet_ceiling:
        orders.append(n)
        n *= 2
    orders.append(settings.jet_ceiling)
    return orders


def maximal_ideal(nvars: int = 2, power: int = 1, field: ScalarField = RATIONALS,
                  center: Sequence | None = None, variables: Sequence[str] | None = None) -> JetIdeal:
    """The fat point m^power."""
    if variables is None:
        variables = PLANE if nvars == 2 else SPACE[:nvars]
    space = jet_space(nvars, power + 1)
    rows = [{j: field.domain.one} for j in range(space.degree_starts[power], space.dimension)]
    return JetIdeal.from_rows(rows, space, variables, field, center, reduced=True)
