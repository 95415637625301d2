"""Exact scalars: the rationals, a quadratic field QQ(sqrt(c)), or the residue
field K[t]/(p) of an irreducible factor p over one of those.

Elements are sympy domain elements of ``ScalarField.domain``; this module owns
conversion, square roots, embeddings along a tower of residue fields and the
text form shared by JSON output. A residue field is presented by a primitive
element written ``w`` in text.
"""
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import sympy
from sympy import QQ
from sympy.ntheory.factor_ import core
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.polyerrors import CoercionFailed

from ..errors import ExtensionDepth, InvariantBreach, ParseError
from .linalg import rank, solve

_RATIONAL_TEXT = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+))?\s*$")
_TRANSFORMS = standard_transformations + (convert_xor,)
PRIMITIVE = "w"


def _square_free(value: Fraction) -> tuple[int, Fraction]:
    """Split ``value`` as ``c * s**2`` with ``c`` a square-free integer."""
    num, den = value.numerator, value.denominator
    sign = -1 if num < 0 else 1
    radicand = core(abs(num) * den, 2)
    factor = Fraction(abs(num) * den, radicand)
    # factor is a perfect square of an integer; divide out den**2
    root = sympy.integer_nthroot(factor.numerator, 2)[0]
    return sign * radicand, Fraction(root, den)


def _qq(value: Fraction):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


@dataclass(frozen=True)
class ScalarField:
    """QQ, QQ(sqrt(radicand)), or QQ(w) with w a root of ``modulus``.

    ``modulus`` lists the monic minimal polynomial of w from the leading
    coefficient down. ``parent`` is the field the residue field was built
    over and ``lift`` writes the parent's primitive element in powers of w,
    leading coefficient first.
    """

    radicand: int | None = None
    modulus: tuple[Fraction, ...] | None = None
    parent: "ScalarField | None" = None
    lift: tuple[Fraction, ...] = ()

    def __post_init__(self):
        if self.radicand is not None:
            if self.modulus is not None:
                raise ValueError("a field has either a radicand or a modulus")
            c = int(self.radicand)
            if c in (0, 1) or core(abs(c), 2) != abs(c):
                raise ValueError(f"radicand must be square-free and not 0 or 1, got {c}")
        if self.modulus is not None and (len(self.modulus) < 3 or self.modulus[0] != 1):
            raise ValueError(f"modulus must be monic of degree at least 2, got {self.modulus}")

    @cached_property
    def domain(self):
        if self.modulus is not None:
            w = sympy.Symbol(PRIMITIVE)
            minpoly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in self.modulus], w, domain=QQ)
            return QQ.algebraic_field((minpoly, sympy.CRootOf(minpoly, 0)))
        if self.radicand is None:
            return QQ
        return QQ.algebraic_field(sympy.sqrt(self.radicand))

    @property
    def is_rational(self) -> bool:
        return self.radicand is None and self.modulus is None

    @property
    def degree(self) -> int:
        if self.modulus is not None:
            return len(self.modulus) - 1
        return 1 if self.radicand is None else 2

    def extends(self, other: "ScalarField") -> bool:
        """True when ``other`` embeds into this field along its tower."""
        if other.is_rational or other == self:
            return True
        return self.parent is not None and self.parent.extends(other)

    # ── conversion ────────────────────────────────────────────────

    def convert(self, value):
        """Bring an int, Fraction, sympy number or domain element into the field."""
        dom = self.domain
        if isinstance(value, (int, Fraction)):
            return dom.convert(_qq(value))
        if dom.of_type(value):
            return value
        if QQ.of_type(value):
            return dom.convert(value, QQ)
        try:
            return dom.from_sympy(sympy.sympify(value))
        except (CoercionFailed, sympy.SympifyError) as exc:
            raise ParseError(f"{value!r} is not an element of {self.describe()}") from exc

    def parse(self, text: str):
        match = _RATIONAL_TEXT.match(text)
        if match:
            num, den = match.groups()
            return self.convert(Fraction(int(num), int(den or 1)))
        if "sqrt" in text and self.radicand is None:
            raise ParseError(f"sqrt literal {text!r} needs an active quadratic extension")
        if self.modulus is not None:
            return self._parse_power_text(text)
        try:
            expr = parse_expr(text, evaluate=True)
        except (SyntaxError, TypeError, sympy.SympifyError) as exc:
            raise ParseError(f"cannot parse scalar {text!r}") from exc
        return self.convert(expr)

    def _parse_power_text(self, text: str):
        w = sympy.Symbol(PRIMITIVE)
        try:
            expr = parse_expr(text, local_dict={PRIMITIVE: w}, transformations=_TRANSFORMS)
            coeffs = sympy.Poly(expr, w, domain=QQ).all_coeffs()
        except (SyntaxError, TypeError, sympy.SympifyError, sympy.PolynomialError) as exc:
            raise ParseError(f"cannot read {text!r} as an element of {self.describe()}") from exc
        return self.from_coordinates([Fraction(int(c.p), int(c.q)) for c in reversed(coeffs)])

    def coordinates(self, element) -> list[Fraction]:
        """Rational coordinates of ``element`` in the powers 1, w, w^2, ..."""
        if self.is_rational:
            return [_to_fraction(element)]
        coeffs = [_to_fraction(c) for c in reversed(element.to_list())]
        return coeffs + [Fraction(0)] * (self.degree - len(coeffs))

    def from_coordinates(self, coords) -> object:
        dom = self.domain
        if self.is_rational:
            return self.convert(coords[0] if coords else 0)
        gen = dom.new([QQ.one, QQ.zero])
        out = dom.zero
        for c in reversed(list(coords)):
            out = out * gen + self.convert(Fraction(c))
        return out

    def to_text(self, element) -> str:
        coords = self.coordinates(element)
        if self.modulus is not None:
            return _power_text(coords)
        a, b = coords[0], coords[1] if len(coords) > 1 else Fraction(0)
        if not b:
            return rational_text(a)
        root = f"sqrt({self.radicand})"
        if b == 1:
            irr = root
        elif b == -1:
            irr = f"-{root}"
        else:
            irr = f"{rational_text(b)}*{root}"
        if not a:
            return irr
        sign = "" if irr.startswith("-") else "+"
        return f"{rational_text(a)}{sign}{irr}"

    def describe(self) -> str:
        if self.modulus is not None:
            return f"QQ({PRIMITIVE}) with {_power_text(list(reversed(self.modulus)))}=0"
        return "QQ" if self.is_rational else f"QQ(sqrt({self.radicand}))"

    def to_json(self):
        if self.modulus is None:
            return self.radicand
        return {
            "modulus": [rational_text(c) for c in self.modulus],
            "parent": None if self.parent is None else self.parent.to_json(),
            "lift": [rational_text(c) for c in self.lift],
        }

    @classmethod
    def from_json(cls, data) -> "ScalarField":
        if data is None:
            return RATIONALS
        try:
            if isinstance(data, dict):
                parent = data.get("parent")
                return cls(
                    modulus=tuple(parse_rational(c) for c in data["modulus"]),
                    parent=None if parent is None else cls.from_json(parent),
                    lift=tuple(parse_rational(c) for c in data.get("lift") or ()),
                )
            return cls(int(data))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"not a scalar field: {data!r}") from exc

    # ── square roots ──────────────────────────────────────────────

    def sqrt(self, element) -> tuple["ScalarField", object]:
        """Return a field containing sqrt(element) and the root inside it.

        Raises ExtensionDepth when a second independent radical would be
        needed.
        """
        coords = self.coordinates(element)
        if any(coords[1:]):
            raise ExtensionDepth(
                f"square root of {self.to_text(element)} needs an extension of {self.describe()}"
            )
        a = coords[0]
        if a == 0:
            return self, self.domain.zero
        radicand, scale = _square_free(a)
        if radicand == 1:
            return self, self.convert(scale)
        if not self.is_rational and radicand != self.radicand:
            raise ExtensionDepth(
                f"sqrt({rational_text(a)}) needs a second extension over {self.describe()}"
            )
        field = self if self.radicand == radicand else ScalarField(radicand)
        root = field.domain.from_sympy(sympy.Rational(scale.numerator, scale.denominator) * sympy.sqrt(radicand))
        return field, root

    # ── towers ────────────────────────────────────────────────────

    def embed(self, element, other: "ScalarField"):
        """Map an element of this field into ``other`` (which must contain it)."""
        if other == self:
            return element
        coords = self.coordinates(element)
        if not any(coords[1:]):
            return other.convert(coords[0])
        if other.parent is None or not other.extends(self):
            raise ExtensionDepth(f"cannot embed {self.describe()} into {other.describe()}")
        return other._from_parent(self.embed(element, other.parent))

    def _from_parent(self, element):
        image = self.from_coordinates(list(reversed(self.lift)))
        out = self.domain.zero
        for c in reversed(self.parent.coordinates(element)):
            out = out * image + self.convert(c)
        return out

    def residue_field(self, factor) -> tuple["ScalarField", object]:
        """The field self[t]/(factor) of an irreducible ``factor``, and the class of t.

        The residue field is presented by the primitive element t + s*w for
        the first integer shift s whose powers span it over QQ.
        """
        k = factor.degree()
        if k < 2:
            raise ValueError("a residue field needs a factor of degree at least 2")
        ring = factor.ring
        monic = factor.monic()
        t = ring.gens[0]
        n = self.degree
        size = n * k
        gen = ring(self.from_coordinates([0, 1])) if n > 1 else ring.zero

        def vector(p) -> dict:
            out = {}
            for (j,), c in p.items():
                for i, v in enumerate(self.coordinates(c)):
                    if v:
                        out[j * n + i] = _qq(v)
            return out

        for shift in _shifts(size):
            eta = t + gen * shift
            powers = [ring.one]
            for _ in range(size):
                powers.append((powers[-1] * eta) % monic)
            vectors = [vector(p) for p in powers]
            if rank(vectors[:size], size, QQ) < size:
                continue
            rows = [{i: v[r] for i, v in enumerate(vectors[:size]) if r in v} for r in range(size)]

            def express(target: dict) -> list[Fraction]:
                found = solve(rows, [target.get(r, QQ.zero) for r in range(size)], size, QQ)
                return [_to_fraction(found.get(i, QQ.zero)) for i in range(size)]

            top = express(vectors[size])
            lift = express(vector(gen)) if n > 1 else []
            field = ScalarField(
                modulus=(Fraction(1),) + tuple(-c for c in reversed(top)),
                parent=None if self.is_rational else self,
                lift=tuple(reversed(lift)),
            )
            # t = (t + s*w) - s*w
            tcoords = [Fraction(0)] * size
            tcoords[1] = Fraction(1)
            for i, c in enumerate(lift):
                tcoords[i] -= shift * c
            return field, field.from_coordinates(tcoords)
        raise InvariantBreach(f"no primitive element for {factor} over {self.describe()}")


RATIONALS = ScalarField()


def _shifts(size: int):
    yield 0
    for s in range(1, size * size + 2):
        yield s
        yield -s


def _to_fraction(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def _power_text(coords: list[Fraction]) -> str:
    """``c_k*w^k+...+c_0`` from coordinates listed from the constant term up."""
    terms = []
    for k in range(len(coords) - 1, -1, -1):
        c = coords[k]
        if not c:
            continue
        if k == 0:
            terms.append(rational_text(c))
            continue
        power = PRIMITIVE if k == 1 else f"{PRIMITIVE}^{k}"
        if c == 1:
            terms.append(power)
        elif c == -1:
            terms.append(f"-{power}")
        else:
            terms.append(f"{rational_text(c)}*{power}")
    if not terms:
        return "0"
    return terms[0] + "".join(t if t.startswith("-") else f"+{t}" for t in terms[1:])


def rational_text(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    match = _RATIONAL_TEXT.match(str(text))
    if not match:
        raise ParseError(f"expected a rational 'p/q', got {text!r}")
    num, den = match.groups()
    return Fraction(int(num), int(den or 1))


def common_field(*fields: ScalarField) -> ScalarField:
    out = RATIONALS
    for fld in fields:
        if out.extends(fld):
            continue
        if not fld.extends(out):
            raise ExtensionDepth(f"{out.describe()} and {fld.describe()} need a common extension")
        out = fld
    return out
