"""Tests for exact surd comparisons and the bound checkers."""

from fractions import Fraction

import pytest

from singord.bounds import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    BoundReport,
    Surd,
    check_degree_bounds,
    check_order_bounds,
    compare_bound,
    degree_cap,
    existence_condition,
    simple_type,
    singularity_order_bounds,
    sqrt_plus_ratio,
    worst_verdict,
)
from singord.local.invariants import normal_form
from singord.schemes import build_scheme, union_all


def _by_id(reports, bound_id):
    return [r for r in reports if r.bound_id == bound_id]


# -------------------------------------------------------------------
# Surd
# -------------------------------------------------------------------


class TestSurd:
    def test_compare_against_rationals(self):
        root2 = Surd.root(2)
        assert root2.compare(1) == 1
        assert root2.compare(2) == -1
        assert root2.compare(Fraction(141, 100)) == 1
        assert root2.compare(Fraction(142, 100)) == -1

    def test_sign_with_mixed_terms(self):
        assert (Surd.root(2) - Fraction(3, 2)).sign() == -1
        assert (Surd.root(3) - Fraction(3, 2)).sign() == 1
        assert (Surd.root(4) - 2).sign() == 0

    def test_floor(self):
        assert Surd.root(2).floor() == 1
        assert Surd.root(2, -1).floor() == -2
        assert Surd.root(41, Fraction(-1, 2), Fraction(3, 2)).floor() == -2

    def test_strict_floor_on_exact_integer(self):
        assert Surd.root(4).floor() == 2
        assert Surd.root(4).strict_floor() == 1

    def test_negative_radicand_rejected(self):
        with pytest.raises(ValueError):
            Surd.root(-1)

    def test_different_radicands_not_comparable(self):
        with pytest.raises(ValueError):
            Surd.root(2).compare(Surd.root(3))

    def test_to_text(self):
        assert Surd.rational(Fraction(3, 2)).to_text() == "3/2"
        assert Surd.root(5, 1, -1).to_text() == "sqrt(5) - 1"
        assert Surd.root(3, 2).to_text() == "2*sqrt(3)"

    def test_sqrt_plus_ratio(self):
        # sqrt(4) + 8/sqrt(4) = 6
        assert sqrt_plus_ratio(Fraction(4), 8, 0).compare(6) == 0


# -------------------------------------------------------------------
# Reports
# -------------------------------------------------------------------


class TestReports:
    def test_compare_bound_verdicts(self):
        assert compare_bound("x", 3, "<=", 3).verdict == PASS
        assert compare_bound("x", 4, "<=", 3).verdict == FAIL
        assert compare_bound("x", 3, "<", 3).verdict == FAIL
        assert compare_bound("x", 3, "==", 3, stable=False).verdict == INCONCLUSIVE

    def test_slack_direction(self):
        assert compare_bound("x", 2, "<=", 5).slack == "3"
        assert compare_bound("x", 5, ">=", 2).slack == "3"

    def test_to_json_keys(self):
        data = compare_bound("e3", 1, "<=", Surd.root(2)).to_json()
        assert set(data) == {"id", "lhs", "relation", "rhs", "verdict", "slack", "details"}
        assert data["rhs"] == "sqrt(2)"

    def test_worst_verdict(self):
        ok = BoundReport("a", "1", "<=", "2", PASS, "1")
        shaky = BoundReport("b", "1", "<=", "2", INCONCLUSIVE, "1")
        bad = BoundReport("c", "3", "<=", "2", FAIL, "-1")
        assert worst_verdict([ok]) == PASS
        assert worst_verdict([ok, shaky]) == INCONCLUSIVE
        assert worst_verdict([shaky, bad, ok]) == FAIL
        assert worst_verdict([]) == PASS

    def test_simple_type(self):
        assert simple_type("A12") == ("A", 12)
        assert simple_type("E6") == ("E", 6)
        assert simple_type(None) is None
        assert simple_type("W12") is None


# -------------------------------------------------------------------
# Degree bounds
# -------------------------------------------------------------------


class TestDegreeBounds:
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_ak_formulas(self, k):
        reports = check_degree_bounds(normal_form(f"A{k}"))
        e41 = _by_id(reports, "e41")
        assert len(e41) == 2
        assert all(r.details["deg_s"] == (3 * k + 4) // 2 for r in e41)
        assert _by_id(reports, "z0-ak")[0].details["deg_z0"] == 2 * k + 1
        assert worst_verdict(reports) == PASS

    def test_d5_formula(self):
        reports = check_degree_bounds(normal_form("D5"))
        assert _by_id(reports, "e41")[0].details["deg_s"] == 8
        assert worst_verdict(reports) == PASS

    def test_e6_formula(self):
        reports = check_degree_bounds(normal_form("E6"))
        assert _by_id(reports, "e41")[0].details["deg_a"] == 9
        assert worst_verdict(reports) == PASS

    def test_non_simple_germ_gets_inequalities(self, poly):
        reports = check_degree_bounds(poly("x^4 + y^4"))
        ids = {r.bound_id for r in reports}
        assert {"e40", "e42", "e71", "e38", "e73"} <= ids
        assert "e41" not in ids
        assert worst_verdict(reports) == PASS


# -------------------------------------------------------------------
# Order bounds
# -------------------------------------------------------------------


class TestOrderBounds:
    def test_fat_point(self):
        reports = check_order_bounds(build_scheme(None, "fat", (0, 0), m=4), trials=5)
        e3 = _by_id(reports, "e3")[0]
        assert e3.verdict == PASS
        assert e3.details["ord0"] == 4
        assert _by_id(reports, "e7")

    def test_general_points_use_exact_formula(self):
        coords = [(0, 0), (1, 3), (4, -2), (-3, 5), (7, 1)]
        points = union_all([build_scheme(None, "fat", c, m=1) for c in coords])
        reports = check_order_bounds(points, trials=5)
        e22 = _by_id(reports, "e22")[0]
        assert e22.rhs == "2"
        assert e22.verdict == PASS


# -------------------------------------------------------------------
# Existence conditions and degree caps
# -------------------------------------------------------------------


class TestExistence:
    def test_cuspidal_cubic_cluster_condition(self):
        reports = existence_condition(["A2"], 3)
        assert _by_id(reports, "e39")[0].verdict == PASS

    def test_three_nodes_on_quartic_fail_the_counting_conditions(self):
        reports = existence_condition(["A1", "A1", "A1"], 4)
        e50 = _by_id(reports, "e50")[0]
        assert e50.details["nodes"] == 3
        assert e50.verdict == FAIL
        assert worst_verdict(reports) == FAIL

    def test_large_degree_passes(self):
        reports = existence_condition(["A1"], 12)
        assert worst_verdict(reports) == PASS


class TestSingularityOrderBounds:
    @pytest.mark.parametrize(
        "name,flavor,cap",
        [("A7", "crit", 5), ("A7", "top", 6), ("A7", "an", 6), ("E6", "crit", 4), ("D4", "top", 7)],
    )
    def test_simple_caps(self, name, flavor, cap):
        reports = singularity_order_bounds(name, flavor)
        assert degree_cap(reports) == cap
        assert worst_verdict(reports) == PASS

    def test_non_simple_top(self, poly):
        reports = singularity_order_bounds(poly("x^4 + y^5"), "top")
        ids = {r.bound_id for r in reports}
        assert ids == {"t3-3", "e45"}
        assert reports[0].details["delta"] == 6

    def test_non_simple_crit(self, poly):
        reports = singularity_order_bounds(poly("x^4 + y^5"), "crit")
        assert [r.bound_id for r in reports] == ["e72"]

    def test_realized_degree_replaces_multiplicity(self):
        assert singularity_order_bounds("A7", "crit", degree=6)[0].verdict == FAIL

    def test_unknown_flavor(self):
        with pytest.raises(ValueError):
            singularity_order_bounds("A1", "weird")
