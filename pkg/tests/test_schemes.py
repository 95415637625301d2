"""Tests for zero-dimensional schemes: constructors, sampling, residues, serialization."""

import json

import pytest

from singord.arith.poly import MultiPoly, monomials
from singord.arith.scalars import RATIONALS
from singord.errors import (
    ModeUnsupported,
    NonInvertible,
    OverlappingSupport,
    ParseError,
    SymbolicPosition,
)
from singord.local import normal_form
from singord.local.jets import JetIdeal
from singord.operations import _SUITE_GERMS, _SUITE_KINDS
from singord.schemes import (
    GENERIC,
    apply_automorphism,
    build_scheme,
    generic_line,
    psi_m,
    residue,
    sample_representative,
    scheme_from_json,
    scheme_to_json,
    union,
    union_all,
)


@pytest.fixture
def cusp(poly):
    return poly("y^2 - x^3")


# -------------------------------------------------------------------
# Constructors
# -------------------------------------------------------------------


class TestBuildScheme:
    def test_fat_point(self):
        z = build_scheme(None, "fat", m=3)
        assert z.degree == 6
        assert z.m2() == 9

    def test_fat_needs_m(self):
        with pytest.raises(ValueError):
            build_scheme(None, "fat")

    def test_curve_scheme_of_cusp(self, cusp):
        z = build_scheme(cusp, "s")
        assert z.degree == 5
        assert z.m2() == 6

    def test_crit0_of_cusp(self, cusp):
        assert build_scheme(cusp, "crit0").degree == 5

    def test_ea_is_tjurina_colength(self, cusp):
        assert build_scheme(cusp, "ea").degree == 2

    def test_es_inside_s_and_ea(self, cusp):
        es = build_scheme(cusp, "es").degree
        assert es <= build_scheme(cusp, "s").degree
        assert es <= build_scheme(cusp, "ea").degree

    def test_analytic_kind_of_simple_germ_uses_curve_scheme(self):
        f = normal_form("A4")
        assert build_scheme(f, "a").degree == build_scheme(f, "s").degree == 8

    def test_s1_adds_a_line(self, cusp):
        assert build_scheme(cusp, "s1").degree > build_scheme(cusp, "s").degree

    def test_unknown_kind(self, cusp):
        with pytest.raises(ValueError):
            build_scheme(cusp, "zz")

    def test_generic_position(self, cusp):
        z = build_scheme(None, "fat", GENERIC, m=2)
        assert not z.has_explicit_positions
        with pytest.raises(SymbolicPosition):
            z.require_positions()
        with pytest.raises(SymbolicPosition):
            build_scheme(cusp, "s", GENERIC)

    def test_germ_at_position(self, cusp):
        moved = cusp.translate([-2, 1])
        z = build_scheme(moved, "s", position=(2, -1))
        point = z.points[0]
        assert [RATIONALS.to_text(c) for c in point.position] == ["2", "-1"]
        assert z.degree == 5


class TestUnion:
    def test_degrees_add(self, cusp):
        z = union(build_scheme(None, "fat", (1, 1), m=2), build_scheme(cusp, "s"))
        assert z.degree == 8

    def test_overlap_rejected(self):
        with pytest.raises(OverlappingSupport):
            union(build_scheme(None, "fat", (0, 0), m=1), build_scheme(None, "fat", (0, 0), m=2))

    def test_empty_union(self):
        assert union_all([]).is_empty


def _trace_degree(scheme, line) -> int:
    """deg(Z cap L) from the colength of I + (ell) at each point on the line."""
    total = 0
    for point in scheme.points:
        if line.evaluate(point.position):
            continue
        ideal = point.ideal
        ell = line.at(point.position).local().with_field(ideal.field).terms()
        rows = list(ideal.basis)
        for mono in monomials(2, ideal.jet_order - 1):
            vec = ideal.space.shifted(ell, mono)
            if vec:
                rows.append(vec)
        total += JetIdeal.from_rows(rows, ideal.space, ideal.variables, ideal.field, ideal.center).colength
    return total


# -------------------------------------------------------------------
# Lines, residues and automorphisms
# -------------------------------------------------------------------


class TestResidue:
    def test_fat_point_by_line(self, poly):
        z = build_scheme(None, "fat", m=2)
        rest, meet = residue(z, poly("x"))
        assert rest.degree == 1
        assert meet == 2

    def test_degrees_split(self, cusp):
        z = union_all([build_scheme(cusp, "s"), build_scheme(None, "fat", (3, 0), m=2)])
        for seed in range(4):
            line = generic_line((0, 0), seed)
            rest, meet = residue(z, line)
            assert rest.degree + meet == z.degree

    @pytest.mark.slow
    @pytest.mark.parametrize("germ", _SUITE_GERMS)
    @pytest.mark.parametrize("kind", _SUITE_KINDS)
    def test_residue_and_trace_degrees_add_up(self, kind, germ):
        z = union_all([build_scheme(normal_form(germ), kind, seed=7), build_scheme(None, "fat", (2, 1), m=2)])
        for seed in range(20):
            line = generic_line((0, 0), seed)
            rest, meet = residue(z, line)
            trace = _trace_degree(z, line)
            assert meet == trace
            assert rest.degree + trace == z.degree

    def test_needs_a_line(self, poly):
        with pytest.raises(ValueError):
            residue(build_scheme(None, "fat", m=1), poly("x^2"))

    def test_generic_line_avoids_tangent(self, cusp):
        line = generic_line((0, 0), 3, avoid=cusp)
        # the cusp is tangent to y = 0
        assert line.coefficient((1, 0)) != 0


class TestAutomorphism:
    def test_translation_moves_points(self, poly):
        x, y = MultiPoly.gen(0), MultiPoly.gen(1)
        z = build_scheme(None, "fat", m=2)
        moved = apply_automorphism(z, [x + 1, y])
        assert moved.degree == 3
        assert [RATIONALS.to_text(c) for c in moved.points[0].position] == ["-1", "0"]

    def test_psi_m_fixes_origin(self, cusp):
        z = build_scheme(cusp, "crit0")
        assert apply_automorphism(z, psi_m(2)).degree == 5

    def test_singular_linear_part(self):
        x = MultiPoly.gen(0)
        with pytest.raises(NonInvertible):
            apply_automorphism(build_scheme(None, "fat", m=1), [x, x])


# -------------------------------------------------------------------
# Sampling
# -------------------------------------------------------------------


class TestSampling:
    def test_iso_keeps_degree(self, cusp):
        z = build_scheme(cusp, "s")
        rep = sample_representative(z, "iso", seed=2)
        assert rep.degree == z.degree
        assert rep.has_explicit_positions

    def test_iso_is_seeded(self, cusp):
        z = build_scheme(cusp, "crit0")
        a = sample_representative(z, "iso", seed=5)
        b = sample_representative(z, "iso", seed=5)
        assert scheme_to_json(a) == scheme_to_json(b)

    def test_def_keeps_tree_shape(self, cusp):
        z = build_scheme(cusp, "s")
        rep = sample_representative(z, "def", seed=0)
        assert rep.degree == z.degree
        assert rep.points[0].cluster.shape() == z.points[0].cluster.shape()

    def test_def_needs_cluster(self, cusp):
        with pytest.raises(ModeUnsupported):
            sample_representative(build_scheme(cusp, "crit0"), "def", seed=0)

    def test_unknown_mode(self, cusp):
        with pytest.raises(ValueError):
            sample_representative(build_scheme(cusp, "s"), "top", seed=0)


# -------------------------------------------------------------------
# Serialization
# -------------------------------------------------------------------


class TestSchemeJson:
    def test_serialized_scheme_reads_back(self, cusp):
        z = union_all([build_scheme(cusp, "ea"), build_scheme(None, "fat", (1, 2), m=2)])
        data = json.loads(json.dumps(scheme_to_json(z)))
        again = scheme_from_json(data)
        assert again.degree == z.degree
        assert [p.colength for p in again.points] == [p.colength for p in z.points]

    def test_recipes(self):
        z = scheme_from_json([
            {"kind": "fat", "m": 2},
            {"kind": "s", "germ": "y^2 - x^3", "position": [1, "1/2"]},
        ])
        assert z.degree == 8
        assert scheme_from_json({"union": [{"kind": "fat", "m": 1, "position": [5, 5]}]}).degree == 1

    def test_recipe_needs_germ(self):
        with pytest.raises(ParseError):
            scheme_from_json({"kind": "s"})

    def test_malformed_record(self):
        with pytest.raises(ParseError):
            scheme_from_json({"points": [{"position": [0, 0]}]})
        with pytest.raises(ParseError):
            scheme_from_json("fat")
