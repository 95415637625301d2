"""Tests for the resolution of plane germs and cluster trees."""

import pytest

from singord.errors import CommonComponent, InvariantBreach, NotReduced, ProximityViolation
from singord.operations import case_intersection_pairs
from singord.puiseux import (
    ClusterTree,
    ClusterVertex,
    characteristic_exponents,
    cluster_ideal,
    cluster_of_ideal,
    delta_invariant,
    eliminant_intersection,
    intersection_multiplicity,
    noether_sum,
    resolve_germ,
    tree_text,
)

CUSP_ROWS = [(None, 2, None), (0, 1, "0"), (1, 1, "inf")]


# -------------------------------------------------------------------
# Cluster trees
# -------------------------------------------------------------------


class TestClusterTree:
    def test_cusp_tree_numbers(self):
        tree = ClusterTree.from_directions(CUSP_ROWS)
        assert tree.degree == 5
        assert tree.m2 == 6
        assert tree.delta == 1
        tree.check_proximity()

    def test_satellite_proximity(self):
        tree = ClusterTree.from_directions(CUSP_ROWS)
        assert tree.vertices[2].is_satellite
        assert tree.vertices[2].proximate == (0, 1)

    def test_proximity_violation_on_load(self):
        data = {
            "vertices": [
                {"parent": None, "multiplicity": 1},
                {"parent": 0, "multiplicity": 1, "direction": "0"},
                {"parent": 1, "multiplicity": 1, "direction": "inf"},
            ]
        }
        with pytest.raises(ProximityViolation):
            ClusterTree.from_json(data)

    def test_root_must_come_first(self):
        with pytest.raises(ProximityViolation):
            ClusterTree((ClusterVertex(0, 1, "0", (0,)),))

    def test_json_round_trip_keeps_shape(self):
        tree = ClusterTree.from_directions(CUSP_ROWS)
        again = ClusterTree.from_json(tree.to_json())
        assert again.shape() == tree.shape()
        assert again.path_keys() == tree.path_keys()

    def test_tree_text(self):
        tree = ClusterTree.from_directions(CUSP_ROWS)
        assert tree_text(tree) == "z(2) z>q1(1) q1>q2(1)"

    def test_cluster_ideal_colength_is_degree(self):
        tree = ClusterTree.from_directions(CUSP_ROWS)
        assert cluster_ideal(tree).colength == 5

    def test_cluster_ideal_needs_directions(self):
        tree = ClusterTree.from_directions(CUSP_ROWS).without_directions()
        with pytest.raises(ValueError):
            cluster_ideal(tree)


class TestCharacteristic:
    def test_cusp(self):
        assert characteristic_exponents([2, 1, 1]) == (2, 3)

    def test_two_pairs(self):
        assert characteristic_exponents([4, 2, 2, 1, 1]) == (4, 6, 7)

    def test_smooth(self):
        assert characteristic_exponents([1]) == (1,)


# -------------------------------------------------------------------
# Resolution
# -------------------------------------------------------------------


class TestResolveGerm:
    def test_cusp(self, poly):
        res = resolve_germ(poly("y^2 - x^3"))
        assert res.multiplicity == 2
        assert res.delta == 1
        assert res.branch_count == 1
        assert res.branches[0].characteristic == (2, 3)

    def test_ordinary_quadruple_point(self, poly):
        res = resolve_germ(poly("x^4 + y^4"))
        assert res.delta == 6
        assert res.branch_count == 4

    def test_two_puiseux_pairs(self, poly):
        res = resolve_germ(poly("y^4 - 2*x^3*y^2 - 4*x^5*y + x^6 - x^7"))
        assert res.branch_count == 1
        assert res.branches[0].characteristic == (4, 6, 7)
        assert res.delta == 8

    def test_at_point(self, poly):
        res = resolve_germ(poly("(y - 1)^2 - (x + 2)^3"), center=(-2, 1))
        assert res.delta == 1

    def test_tree_shape_is_coordinate_free(self, poly):
        first = resolve_germ(poly("y^2 - x^5")).tree
        second = resolve_germ(poly("(x + y^2)^2 - y^5")).tree
        assert first.shape() == second.shape()

    def test_not_reduced(self, poly):
        with pytest.raises(NotReduced):
            resolve_germ(poly("(y^2 - x^3)^2"))

    @pytest.mark.parametrize(
        "text, delta",
        [("y^2 - x^2", 1), ("x^3 + y^6", 6), ("x^2*y + y^4", 3), ("y^4 - x^6", 8)],
    )
    def test_delta_invariant(self, poly, text, delta):
        assert delta_invariant(poly(text)) == delta


class TestConjugatePackets:
    CUBIC = "(y^3 - 2*x^3)^2 + x^7"
    QUADRATIC = "(y^2 - 2*x^2)^2 + (x^2 - 3*y^2)*x^3"
    NESTED = "((y^2 - 2*x^2)^2 - 24*x^6)^2 + x^13"

    def test_cubic_packet_is_followed(self, poly):
        res = resolve_germ(poly(self.CUBIC))
        assert res.multiplicity == 6
        assert res.delta == 15
        assert res.branch_count == 3
        assert [v.packet for v in res.tree.vertices] == [1, 3, 3]
        assert res.tree.field_of(1).degree == 3

    def test_cubic_packet_milnor_formula(self, poly):
        assert delta_invariant(poly(self.CUBIC)) == 15

    def test_cubic_packet_branches_are_cusps(self, poly):
        res = resolve_germ(poly(self.CUBIC))
        assert len(res.branches) == 1
        assert res.branches[0].packet == 3
        assert res.branches[0].characteristic == (2, 3)

    def test_quadratic_packet(self, poly):
        res = resolve_germ(poly(self.QUADRATIC))
        assert res.delta == 6
        assert res.branch_count == 2
        assert delta_invariant(poly(self.QUADRATIC)) == 6

    def test_nested_quadratic_packets(self, poly):
        res = resolve_germ(poly(self.NESTED))
        assert res.multiplicity == 8
        assert res.delta == 40
        assert res.branch_count == 4
        inner = [i for i, v in enumerate(res.tree.vertices) if v.packet == 4]
        assert inner
        assert all(res.tree.field_of(i).degree == 4 for i in inner)

    @pytest.mark.slow
    def test_nested_packets_milnor_formula(self, poly):
        assert delta_invariant(poly(self.NESTED)) == 40

    def test_tree_with_residue_field_survives_json(self, poly):
        tree = resolve_germ(poly(self.CUBIC)).tree
        again = ClusterTree.from_json(tree.to_json())
        assert again.path_keys() == tree.path_keys()
        assert again.field_of(1) == tree.field_of(1)

    def test_cluster_ideal_over_packet(self, poly):
        tree = resolve_germ(poly(self.CUBIC)).tree
        assert tree.degree == 27
        assert cluster_ideal(tree).colength == 27

    def test_intersection_through_cubic_packet(self, poly):
        f, g = poly("y^3 - 2*x^3"), poly("y^3 - 2*x^3 + x^4")
        assert intersection_multiplicity(f, g) == 12


# -------------------------------------------------------------------
# Intersections
# -------------------------------------------------------------------


class TestIntersection:
    def test_cusps(self, poly):
        f, g = poly("y^2 - x^3"), poly("y^2 + x^3")
        assert intersection_multiplicity(f, g) == 6
        assert eliminant_intersection(f, g) == 6

    def test_symmetric(self, poly):
        f, g = poly("y^3 - x^5"), poly("y - x^2")
        assert intersection_multiplicity(f, g) == intersection_multiplicity(g, f) == 5

    def test_transverse_lines(self, poly):
        assert intersection_multiplicity(poly("x"), poly("y")) == 1

    def test_not_through_point(self, poly):
        assert intersection_multiplicity(poly("x - 1"), poly("y")) == 0

    def test_tangent_parabola(self, poly):
        assert intersection_multiplicity(poly("y - x^2"), poly("y")) == 2

    def test_common_component(self, poly):
        with pytest.raises(CommonComponent):
            intersection_multiplicity(poly("x*y"), poly("x*(x + y)"))

    def test_noether_sum_through_cubic_packet(self, poly):
        f, g = poly("y^3 - 2*x^3"), poly("y^3 - 2*x^3 + x^4")
        assert noether_sum(f, g) == 12
        assert eliminant_intersection(f, g) == 12

    def test_oracle_disagreement_is_raised(self, poly, monkeypatch):
        monkeypatch.setattr("singord.puiseux.eliminant_intersection", lambda *args, **kwargs: 7)
        with pytest.raises(InvariantBreach):
            intersection_multiplicity(poly("y^2 - x^3"), poly("y^2 + x^3"))

    def test_pairs_case_compares_independent_numbers(self, settings):
        out = case_intersection_pairs({"count": 4}, 0, settings)
        assert len(out["pairs"]) == 4
        assert out["agree"] == all(p["noether"] == p["oracle"] for p in out["pairs"])
        assert out["agree"]


# -------------------------------------------------------------------
# Cluster subschemes
# -------------------------------------------------------------------


class TestClusterOfIdeal:
    def test_recovers_cluster_of_cluster_ideal(self):
        tree = ClusterTree.from_directions(CUSP_ROWS)
        found = cluster_of_ideal(cluster_ideal(tree), seed=0)
        assert found.shape() == tree.shape()
        assert found.degree == 5

    def test_fat_point(self):
        tree = ClusterTree.from_directions([(None, 3, None)])
        found = cluster_of_ideal(cluster_ideal(tree), seed=1)
        assert found.m2 == 9
