"""Tests for the realizer: critical points, plane curves and the A_k families."""

import random

import pytest

from singord.errors import ConditionFailed
from singord.local.invariants import classify_simple, derived_ideal, milnor_number, normal_form
from singord.profile import germ_profile
from singord.realizer import ak_family, construct_ak_3d, minimal_degree, realize_critical_point, realize_plane_curve
from singord.realizer.critical import _critical_route, iso_jet
from singord.realizer.verify import (
    CERTIFIED,
    FAILED,
    INVARIANT_MATCHED,
    CheckLog,
    RealizationResult,
    arithmetic_genus,
    is_irreducible_over_rationals,
)


# -------------------------------------------------------------------
# Check bookkeeping
# -------------------------------------------------------------------


class TestCheckLog:
    def test_expect_and_flag(self):
        log = CheckLog()
        assert log.expect("mu", 3, 3)
        assert not log.expect("tau", 2, 3)
        assert not log.flag("irreducible", False)
        assert log.values == {"mu": 3, "tau": 2, "irreducible": False}
        assert log.failed == ["tau: got 2, expected 3", "irreducible"]
        assert not log.ok

    def test_verified_needs_bound(self, poly):
        result = RealizationResult(poly("x^6 + y^2"), ("A5",), {}, CERTIFIED, bound=5)
        assert not result.within_bound
        assert not result.verified
        assert RealizationResult(poly("x^2 + y^2"), ("A1",), {}, CERTIFIED, bound=3).verified
        assert not RealizationResult(poly("x^2 + y^2"), ("A1",), {}, FAILED).verified

    def test_genus(self):
        assert [arithmetic_genus(d) for d in (1, 2, 3, 4)] == [0, 0, 1, 3]

    def test_irreducibility(self, poly):
        assert is_irreducible_over_rationals(poly("y^2 - x^3 - x"))
        assert not is_irreducible_over_rationals(poly("y^2 - x^2"))


# -------------------------------------------------------------------
# Critical points
# -------------------------------------------------------------------


class TestCriticalPoints:
    @pytest.mark.parametrize("name,mu", [("A1", 1), ("A3", 3)])
    def test_ak_certified(self, name, mu, settings):
        result = realize_critical_point(name, seed=0, settings=settings)
        assert result.label == CERTIFIED
        assert result.verified
        assert milnor_number(result.polynomial, settings) == mu
        assert result.to_json()["targets"] == [name]

    def test_d4_matched(self, settings):
        result = realize_critical_point("D4", seed=0, settings=settings)
        assert result.label == INVARIANT_MATCHED
        assert result.checks["type"] == "D4"
        assert result.degree <= result.bound

    @pytest.mark.slow
    def test_e6_matched(self, settings):
        result = realize_critical_point("E6", seed=0, settings=settings)
        assert result.label == INVARIANT_MATCHED
        assert result.degree <= 4

    def test_deterministic(self, settings):
        first = realize_critical_point("A3", seed=5, settings=settings)
        second = realize_critical_point("A3", seed=5, settings=settings)
        assert first.polynomial.to_text() == second.polynomial.to_text()

    def test_space_germ_rejected(self):
        from singord.arith.poly import SPACE, MultiPoly

        with pytest.raises(ValueError):
            realize_critical_point(MultiPoly.parse("x1^2 + x2^2 + x3^2", SPACE))


class TestCriticalSchemeRoute:
    """The critical-scheme route on its own, without the cluster route in front."""

    def _run(self, name, settings, seed=0):
        f = normal_form(name)
        target = germ_profile(f.local(), settings)
        rng = random.Random(seed)
        g = iso_jet(f, target.mu, rng, settings)
        found = _critical_route(g, rng, seed, settings, target.mu + 1)
        assert found is not None
        p, details = found
        return g, target, p, details

    @pytest.mark.parametrize("name", ["A3", "D4", pytest.param("E6", marks=pytest.mark.slow)])
    def test_solution_is_right_equivalent(self, name, settings):
        g, target, p, details = self._run(name, settings)
        assert details["route"] == "critical"
        assert p.degree <= details["solved_degree"]
        assert milnor_number(p, settings) == target.mu
        assert classify_simple(p, settings) == name

    @pytest.mark.parametrize("name", ["A3", "D4", pytest.param("E6", marks=pytest.mark.slow)])
    def test_difference_lies_in_critical_ideal(self, name, settings):
        g, _, p, _ = self._run(name, settings)
        assert derived_ideal(g, "crit", settings).contains((p - g).local())

    def test_pinned_route_is_recorded(self, settings):
        result = realize_critical_point("A3", seed=0, settings=settings, route="critical")
        assert result.details["route"] == "critical"
        assert result.verified

    def test_default_route_tries_cluster_first(self, settings):
        result = realize_critical_point("A3", seed=0, settings=settings)
        assert result.details["route"] == "cluster"

    def test_cluster_route_needs_simple_target(self, poly, settings):
        with pytest.raises(ValueError):
            realize_critical_point(poly("x^4 + y^5"), settings=settings, route="cluster")

    def test_unknown_route(self):
        with pytest.raises(ValueError):
            realize_critical_point("A1", route="fastest")


# -------------------------------------------------------------------
# Families
# -------------------------------------------------------------------


class TestAkFamily:
    def test_m2(self, settings):
        result = ak_family(2, settings)
        assert result.label == CERTIFIED
        assert result.targets == ("A7",)
        assert result.degree == 4
        assert result.bound == 5
        assert result.verified

    def test_m_must_be_at_least_two(self):
        with pytest.raises(ValueError):
            ak_family(1)


class TestAk3d:
    def test_k2(self, settings):
        result = construct_ak_3d(2, seed=0, settings=settings)
        assert result.label == CERTIFIED
        assert result.polynomial.nvars == 3
        assert result.checks["mu"] == 2

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            construct_ak_3d(0)
        with pytest.raises(ValueError):
            construct_ak_3d(28)


# -------------------------------------------------------------------
# Plane curves
# -------------------------------------------------------------------


class TestPlaneCurves:
    @pytest.mark.slow
    def test_cuspidal_cubic(self, settings):
        result = realize_plane_curve(["A2"], 3, seed=0, settings=settings)
        assert result.label == CERTIFIED
        assert result.degree == 3
        assert result.checks["irreducible"] is True
        assert result.checks["extra_sing_clean"] is True

    def test_minimal_degree_cusp_and_node(self, settings):
        assert minimal_degree(["A2", "A1"], settings=settings) == 4

    def test_minimal_degree_gives_up(self, settings):
        with pytest.raises(ConditionFailed):
            minimal_degree(["A4", "A4"], settings=settings, stop=2)

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            realize_plane_curve(["A1"], 0)
        with pytest.raises(ValueError):
            realize_plane_curve([], 3)
        with pytest.raises(ValueError):
            realize_plane_curve(["A1"], 3, flavor="crit")
