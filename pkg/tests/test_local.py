"""Tests for jet ideals and the local invariants of germs."""

import pytest

from singord.arith.poly import SPACE, MultiPoly
from singord.arith.scalars import RATIONALS
from singord.config import Settings
from singord.errors import NonFiniteColength, NotReduced, ParseError, ZeroInput
from singord.local import (
    classify_simple,
    close_ideal,
    derived_ideal,
    hessian_corank,
    maximal_ideal,
    milnor_number,
    multiplicity,
    normal_form,
    sample_ideal_element,
    tjurina_number,
)


# -------------------------------------------------------------------
# Jet ideals
# -------------------------------------------------------------------


class TestCloseIdeal:
    def test_monomial_ideal_colength(self, poly):
        ideal = close_ideal([poly("x^2"), poly("y^3")])
        assert ideal.colength == 6
        assert ideal.certificate <= 4

    def test_certificate_is_stable(self, poly):
        gens = poly("y^2 - x^5").gradient()
        ideal = close_ideal(gens)
        again = close_ideal(gens, order=ideal.jet_order + 2)
        assert again.colength == ideal.colength

    def test_centered_elsewhere(self, poly):
        gens = [poly("(x - 1)^2"), poly("(y + 1)^2")]
        assert close_ideal(gens, center=(1, -1)).colength == 4
        # a point off the zero locus gives the unit ideal
        assert close_ideal(gens, center=(0, 0)).colength == 0

    def test_non_isolated_raises(self, poly):
        with pytest.raises(NonFiniteColength):
            close_ideal([poly("x^2"), poly("x*y")], settings=Settings(jet_ceiling=16))

    def test_zero_generators(self):
        with pytest.raises(ZeroInput):
            close_ideal([MultiPoly.constant(0)])

    def test_fat_point(self):
        ideal = maximal_ideal(2, 3)
        assert ideal.colength == 6
        assert ideal.order == 3

    def test_closed_and_contains(self, poly):
        ideal = close_ideal([poly("y^2 - x^3")] + poly("y^2 - x^3").gradient())
        assert ideal.is_closed()
        assert ideal.contains(poly("x^2*y"))
        assert not ideal.contains(poly("x"))

    def test_quotient_by_line(self, poly):
        ideal = close_ideal([poly("x^2"), poly("y")])
        quotient = ideal.quotient(poly("x"))
        assert quotient.colength == 1
        assert ideal.quotient(poly("x^2")) is None


# -------------------------------------------------------------------
# Invariants
# -------------------------------------------------------------------


class TestMilnorTjurina:
    @pytest.mark.parametrize(
        "text, mu",
        [
            ("y^2 - x^3", 2),
            ("x^2 + y^2", 1),
            ("x^4 + y^4", 9),
            ("x^3 + y^7", 12),
            ("x^2*y - y^5", 6),
            ("x + y^2", 0),
        ],
    )
    def test_milnor(self, poly, text, mu):
        assert milnor_number(poly(text)) == mu

    def test_tjurina_quasi_homogeneous(self, poly):
        assert tjurina_number(poly("y^2 - x^3")) == 2

    def test_tjurina_below_milnor(self, poly):
        f = poly("x^4 + y^5 + x^2*y^3")
        assert milnor_number(f) == 12
        assert tjurina_number(f) == 11

    def test_three_variables(self):
        f = MultiPoly.parse("x1^2 + x2^3 + x3^2", SPACE)
        assert milnor_number(f) == 2
        assert hessian_corank(f) == 1

    def test_multiplicity_at_point(self, poly):
        f = poly("(x - 2)^3 + (y - 1)^4").at((2, 1))
        assert multiplicity(f) == 3

    def test_zero_gradient(self):
        with pytest.raises(ZeroInput):
            milnor_number(MultiPoly.constant(5))


class TestClassification:
    @pytest.mark.parametrize("name", ["A1", "A2", "A5", "D4", "D6", "E6", "E7", "E8"])
    def test_normal_forms_classify_to_themselves(self, name):
        assert classify_simple(normal_form(name)) == name

    def test_non_simple(self, poly):
        assert classify_simple(poly("x^4 + y^4")) is None
        assert classify_simple(poly("x^3 + y^7")) is None

    def test_coordinate_change_keeps_type(self, poly):
        # (y - x^2)^2 - x^5 is A4
        assert classify_simple(poly("(y - x^2)^2 - x^5")) == "A4"

    def test_hessian_corank(self):
        assert hessian_corank(normal_form("A1")) == 0
        assert hessian_corank(normal_form("A6")) == 1
        assert hessian_corank(normal_form("D5")) == 2

    @pytest.mark.parametrize("bad", ["A0", "D3", "E9", "X5", ""])
    def test_unknown_type(self, bad):
        with pytest.raises(ParseError):
            normal_form(bad)


class TestDerivedIdeals:
    def test_ea_is_tjurina(self, poly):
        f = poly("x^4 + y^5")
        assert derived_ideal(f, "ea").colength == tjurina_number(f)

    def test_chain_of_colengths(self, poly):
        f = poly("x^4 + y^5")
        ea = derived_ideal(f, "ea").colength
        a = derived_ideal(f, "a").colength
        a1 = derived_ideal(f, "a1").colength
        assert ea <= a <= a1

    def test_crit0_of_cusp(self, poly):
        assert derived_ideal(poly("y^2 - x^3"), "crit0").colength == 5

    def test_crit_is_smaller_ideal(self, poly):
        f = poly("y^2 - x^3")
        crit0 = derived_ideal(f, "crit0")
        crit = derived_ideal(f, "crit")
        assert crit.colength > crit0.colength
        assert crit0.minimal_generator_count() >= 2

    def test_not_reduced(self, poly):
        with pytest.raises(NotReduced):
            derived_ideal(poly("(y - x^2)^2"), "a")

    def test_unknown_kind(self, poly):
        with pytest.raises(ValueError):
            derived_ideal(poly("y^2 - x^3"), "s")


class TestSampling:
    def test_sample_lies_in_ideal(self, poly):
        ideal = derived_ideal(poly("x^3 - y^4"), "crit0")
        for seed in range(3):
            g = sample_ideal_element(ideal, seed)
            assert ideal.contains(g.local())

    def test_sample_is_seeded(self, poly):
        ideal = close_ideal([poly("x^2"), poly("y^2")])
        assert sample_ideal_element(ideal, 7) == sample_ideal_element(ideal, 7)

    def test_sample_at_point(self, poly):
        ideal = maximal_ideal(2, 2, center=(3, -1))
        g = sample_ideal_element(ideal, 1)
        assert not g.evaluate((3, -1))
        assert multiplicity(g) >= 2

    @pytest.mark.parametrize("t", ["1", "-1", "1/2"])
    def test_perturbation_by_crit_ideal_keeps_invariants(self, poly, t):
        f = poly("x^3 - y^4")
        g = sample_ideal_element(derived_ideal(f, "crit"), 2).local()
        moved = f + g.scale(RATIONALS.parse(t))
        assert milnor_number(moved) == milnor_number(f)
        assert multiplicity(moved) == multiplicity(f)
