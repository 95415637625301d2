"""Sparse polynomials over a ScalarField, read as germs at a center point.

``MultiPoly`` wraps an immutable sympy ``PolyElement`` in a graded-lex ring.
Exponent vectors follow the declared variable order.
"""
import re
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from ..errors import ParseError, ZeroInput
from .scalars import RATIONALS, ScalarField

PLANE = ("x", "y")
SPACE = ("x1", "x2", "x3")

_ALLOWED_TEXT = re.compile(r"^[0-9A-Za-z_+\-*/^()\s]+$")
_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_TRANSFORMS = standard_transformations + (convert_xor,)


@lru_cache(maxsize=None)
def poly_ring(variables: tuple[str, ...], field: ScalarField) -> PolyRing:
    return PolyRing(variables, field.domain, grlex)


def _var_index(ring: PolyRing, var: int | str) -> int:
    if isinstance(var, str):
        names = [str(s) for s in ring.symbols]
        if var not in names:
            raise ValueError(f"invalid generator: {var}")
        return names.index(var)
    return ring.index(var)


def _guess_variables(text: str) -> tuple[str, ...]:
    names = set(_IDENTIFIER.findall(text)) - {"sqrt"}
    if names & set(SPACE):
        return SPACE
    if "t" in names and not names & set(PLANE):
        return ("t",)
    return PLANE


class MultiPoly:
    """An exact polynomial with a distinguished center.

    The polynomial is stored in global coordinates; ``local()`` gives its
    expansion in coordinates centered at ``center``.
    """

    __slots__ = ("element", "field", "center")

    def __init__(self, element, field: ScalarField = RATIONALS, center: Sequence | None = None):
        ring = poly_ring(tuple(str(s) for s in element.ring.symbols), field)
        if element.ring != ring:
            raise ValueError(f"element lives in {element.ring}, expected {ring}")
        self.element = element
        self.field = field
        if center is None:
            center = (field.domain.zero,) * ring.ngens
        elif len(center) != ring.ngens:
            raise ValueError(f"center {center!r} does not match {ring.ngens} variables")
        self.center = tuple(field.convert(c) for c in center)

    # ── construction ──────────────────────────────────────────────

    @classmethod
    def parse(
        cls,
        text: str,
        variables: Sequence[str] | None = None,
        field: ScalarField = RATIONALS,
        center: Sequence | None = None,
    ) -> "MultiPoly":
        if not text or not text.strip():
            raise ParseError("empty polynomial")
        if not _ALLOWED_TEXT.match(text):
            raise ParseError(f"unexpected characters in {text!r}")
        variables = tuple(variables) if variables else _guess_variables(text)
        unknown = set(_IDENTIFIER.findall(text)) - set(variables) - {"sqrt"}
        if unknown:
            raise ParseError(f"unknown names {sorted(unknown)} in {text!r}; variables are {list(variables)}")
        if "sqrt" in text and field.is_rational:
            raise ParseError(f"sqrt literal in {text!r} needs an active quadratic extension")
        local_dict = {name: sympy.Symbol(name) for name in variables}
        local_dict["sqrt"] = sympy.sqrt
        try:
            expr = parse_expr(text, local_dict=local_dict, transformations=_TRANSFORMS)
            element = poly_ring(variables, field).from_expr(expr)
        except (SyntaxError, TypeError, ValueError, sympy.SympifyError) as exc:
            raise ParseError(f"cannot read {text!r} as a polynomial in {list(variables)}") from exc
        return cls(element, field, center)

    @classmethod
    def from_terms(
        cls,
        terms: Mapping[tuple[int, ...], object],
        variables: Sequence[str] = PLANE,
        field: ScalarField = RATIONALS,
        center: Sequence | None = None,
    ) -> "MultiPoly":
        ring = poly_ring(tuple(variables), field)
        data = {}
        for exp, coeff in terms.items():
            value = field.convert(coeff)
            if value:
                data[tuple(exp)] = value
        return cls(ring.dtype(data), field, center)

    @classmethod
    def constant(cls, value, variables: Sequence[str] = PLANE, field: ScalarField = RATIONALS) -> "MultiPoly":
        return cls.from_terms({(0,) * len(variables): value}, variables, field)

    @classmethod
    def gen(cls, index: int, variables: Sequence[str] = PLANE, field: ScalarField = RATIONALS) -> "MultiPoly":
        exp = tuple(1 if i == index else 0 for i in range(len(variables)))
        return cls.from_terms({exp: 1}, variables, field)

    def _new(self, element, center=None) -> "MultiPoly":
        return MultiPoly(element, self.field, self.center if center is None else center)

    # ── structure ─────────────────────────────────────────────────

    @property
    def ring(self) -> PolyRing:
        return self.element.ring

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(str(s) for s in self.ring.symbols)

    @property
    def nvars(self) -> int:
        return self.ring.ngens

    @property
    def is_zero(self) -> bool:
        return not self.element

    def terms(self) -> dict[tuple[int, ...], object]:
        return dict(self.element)

    def coefficient(self, exp: Sequence[int]):
        return self.element.get(tuple(exp), self.field.domain.zero)

    @property
    def degree(self) -> int:
        if self.is_zero:
            return -1
        return max(sum(m) for m in self.element)

    @property
    def order(self) -> int:
        """Lowest total degree of a term (the order of the germ at the origin)."""
        if self.is_zero:
            raise ZeroInput("the zero polynomial has no order")
        return min(sum(m) for m in self.element)

    def degree_in(self, var: int | str) -> int:
        i = _var_index(self.ring, var)
        return max((m[i] for m in self.element), default=-1)

    def truncate(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError(f"jet order must be non-negative, got {n}")
        return self._new(self.ring.dtype({m: c for m, c in self.element.items() if sum(m) <= n}))

    def homogeneous(self, d: int) -> "MultiPoly":
        return self._new(self.ring.dtype({m: c for m, c in self.element.items() if sum(m) == d}))

    def initial_form(self) -> "MultiPoly":
        return self.homogeneous(self.order)

    # ── arithmetic ────────────────────────────────────────────────

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise ValueError(f"cannot combine polynomials over {self.ring} and {other.ring}")
            return other
        return MultiPoly.constant(other, self.variables, self.field)

    def __add__(self, other):
        return self._new(self.element + self._coerce(other).element)

    __radd__ = __add__

    def __sub__(self, other):
        return self._new(self.element - self._coerce(other).element)

    def __rsub__(self, other):
        return self._new(self._coerce(other).element - self.element)

    def __mul__(self, other):
        return self._new(self.element * self._coerce(other).element)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.element)

    def __pow__(self, n: int):
        return self._new(self.element**n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (
            self.ring == other.ring
            and dict(self.element) == dict(other.element)
            and self.center == other.center
        )

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.element.items()), self.center))

    def scale(self, value) -> "MultiPoly":
        return self._new(self.element * self.field.convert(value))

    def diff(self, var: int | str) -> "MultiPoly":
        return self._new(self.element.diff(_var_index(self.ring, var)))

    def gradient(self) -> list["MultiPoly"]:
        return [self.diff(i) for i in range(self.nvars)]

    def evaluate(self, point: Sequence):
        ring = self.ring
        values = [self.field.convert(v) for v in point]
        result = self.element.evaluate(list(zip(ring.gens, values)))
        return result

    # ── coordinate changes ────────────────────────────────────────

    def translate(self, point: Sequence) -> "MultiPoly":
        """Return p(X + point), the expansion of p at ``point``."""
        ring = self.ring
        values = [self.field.convert(v) for v in point]
        if not any(values):
            return self._new(self.element, center=(self.field.domain.zero,) * ring.ngens)
        pairs = [(g, g + v) for g, v in zip(ring.gens, values) if v]
        return self._new(self.element.compose(pairs), center=(self.field.domain.zero,) * ring.ngens)

    def local(self) -> "MultiPoly":
        """Expansion at the center, in coordinates centered at the origin."""
        return self.translate(self.center)

    def at(self, center: Sequence) -> "MultiPoly":
        return self._new(self.element, center=center)

    def compose(self, substitutions: Sequence["MultiPoly"], order: int | None = None) -> "MultiPoly":
        """Substitute polynomials for the variables, truncating at ``order``.

        The substitutions may live in a ring with different variables; the
        result lives there.
        """
        if len(substitutions) != self.nvars:
            raise ValueError(f"need {self.nvars} substitutions, got {len(substitutions)}")
        target = substitutions[0]
        ring = target.ring
        subs = [s.element for s in substitutions]
        powers: dict[tuple[int, int], object] = {}

        def trunc(el):
            if order is None:
                return el
            return ring.dtype({m: c for m, c in el.items() if sum(m) <= order})

        def power(i: int, e: int):
            key = (i, e)
            if key not in powers:
                powers[key] = ring.one if e == 0 else trunc(power(i, e - 1) * subs[i])
            return powers[key]

        result = ring.zero
        for exp, coeff in self.element.items():
            term = ring.one
            for i, e in enumerate(exp):
                if e:
                    term = trunc(term * power(i, e))
                    if not term:
                        break
            if term:
                result += term * self.field.embed(coeff, target.field)
        return MultiPoly(trunc(result), target.field)

    def with_field(self, field: ScalarField) -> "MultiPoly":
        if field == self.field:
            return self
        ring = poly_ring(self.variables, field)
        data = {m: self.field.embed(c, field) for m, c in self.element.items()}
        center = tuple(self.field.embed(c, field) for c in self.center)
        return MultiPoly(ring.dtype(data), field, center)

    def with_variables(self, variables: Sequence[str]) -> "MultiPoly":
        ring = poly_ring(tuple(variables), self.field)
        if len(variables) != self.nvars:
            raise ValueError(f"cannot rename {self.nvars} variables to {list(variables)}")
        return MultiPoly(ring.dtype(dict(self.element)), self.field, self.center)

    # ── output ────────────────────────────────────────────────────

    def to_text(self) -> str:
        if self.is_zero:
            return "0"
        names = self.variables
        pieces = []
        for exp, coeff in self.element.terms():
            monomial = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(names, exp) if e
            )
            text = self.field.to_text(coeff)
            negative = text.startswith("-") and "sqrt" not in text
            if negative:
                text = text[1:]
            if "sqrt" in text and monomial:
                text = f"({text})"
            if monomial:
                body = monomial if text == "1" else f"{text}*{monomial}"
            else:
                body = text
            pieces.append(("-" if negative else "+", body))
        sign, body = pieces[0]
        out = [f"-{body}" if sign == "-" else body]
        for sign, body in pieces[1:]:
            out.append(f" {sign} {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_text()!r})"

    __str__ = to_text


def eliminant(p: MultiPoly, q: MultiPoly, var: int | str) -> MultiPoly:
    """Resultant of p and q with respect to ``var``, in the ring of p."""
    if p.is_zero or q.is_zero:
        raise ZeroInput("eliminant of a zero polynomial")
    if p.ring != q.ring:
        raise ValueError("eliminant needs polynomials over the same ring")
    ring = p.ring
    i = _var_index(ring, var)
    if p.degree_in(i) <= 0 or q.degree_in(i) <= 0:
        raise ValueError(f"both polynomials need positive degree in {ring.symbols[i]}")
    symbols = list(ring.symbols)
    order = [symbols[i]] + symbols[:i] + symbols[i + 1:]
    moved = PolyRing(order, ring.domain, grlex)
    res = p.element.set_ring(moved).resultant(q.element.set_ring(moved))
    if moved.ngens == 1:
        return MultiPoly.constant(res, p.variables, p.field)
    return MultiPoly(res.set_ring(ring), p.field)


def polynomial_gcd(polys: Iterable[MultiPoly]) -> MultiPoly:
    polys = [p for p in polys if not p.is_zero]
    if not polys:
        raise ZeroInput("gcd of zero polynomials")
    g = polys[0].element
    for p in polys[1:]:
        g = g.gcd(p.element)
    return MultiPoly(g, polys[0].field)


def monomials(nvars: int, max_degree: int, min_degree: int = 0) -> list[tuple[int, ...]]:
    """Monomials by ascending degree, descending lex within a degree."""
    out: list[tuple[int, ...]] = []
    for d in range(min_degree, max_degree + 1):
        out.extend(_monomials_of_degree(nvars, d))
    return out


@lru_cache(maxsize=None)
def _monomials_of_degree(nvars: int, d: int) -> tuple[tuple[int, ...], ...]:
    if nvars == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, d - first):
            out.append((first,) + rest)
    return tuple(out)
