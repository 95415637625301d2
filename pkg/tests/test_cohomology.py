"""Tests for condition matrices, cohomology, Castelnuovo functions and generic orders."""

import pytest

from singord.cohomology import (
    castelnuovo,
    cohomology,
    condition_matrix,
    first_vanishing,
    form_count,
    generic_orders,
    interpolation_basis,
    residue_step_holds,
)
from singord.schemes import ZeroDimScheme, build_scheme, union_all


def _points(*coords):
    return union_all([build_scheme(None, "fat", c, m=1) for c in coords])


def _fat(m, position=(0, 0)):
    return build_scheme(None, "fat", position, m=m)


# -------------------------------------------------------------------
# Cohomology
# -------------------------------------------------------------------


class TestCohomology:
    def test_form_count(self):
        assert [form_count(n) for n in range(4)] == [1, 3, 6, 10]
        assert form_count(-1) == 0

    def test_fat_point_vanishing(self):
        z = _fat(3)
        assert cohomology(z, 1) == (0, 3)
        assert cohomology(z, 2) == (0, 0)
        assert cohomology(z, 3) == (4, 0)

    def test_collinear_points(self):
        z = _points((0, 0), (1, 1), (2, 2))
        assert cohomology(z, 1) == (1, 1)
        assert cohomology(z, 2)[1] == 0

    def test_point_off_origin(self):
        z = _fat(2, (3, -2))
        assert cohomology(z, 1) == (0, 0)

    def test_negative_degree(self):
        with pytest.raises(ValueError):
            cohomology(_fat(1), -1)

    def test_condition_matrix_shape(self):
        matrix = condition_matrix(_fat(2), 2)
        assert matrix.ncols == 6
        assert len(matrix.rows) == 3
        assert matrix.rank == 3

    def test_interpolation_basis_on_conic(self):
        z = _points(*[(i, i * i) for i in range(5)])
        (conic,) = interpolation_basis(z, 2)
        assert conic.degree == 2
        for i in range(7):
            assert not conic.evaluate((i, i * i))


# -------------------------------------------------------------------
# Castelnuovo functions
# -------------------------------------------------------------------


class TestCastelnuovo:
    def test_fat_point(self):
        profile = castelnuovo(_fat(3))
        assert profile.ord0 == 3
        assert profile.ord1 == 2
        assert list(profile.values) == [1, 2, 3, 0]

    def test_values_sum_to_degree(self, poly):
        z = union_all([build_scheme(poly("y^2 - x^3"), "s"), _fat(2, (2, 1))])
        profile = castelnuovo(z)
        assert sum(profile.values) == z.degree
        assert profile.ord0 <= profile.ord1 + 1

    def test_empty_scheme(self):
        profile = castelnuovo(ZeroDimScheme())
        assert profile.to_json()["deg"] == 0

    def test_first_vanishing(self):
        assert first_vanishing(_fat(4)) == 3
        assert first_vanishing(_points((0, 0), (1, 0), (2, 0), (3, 0))) == 3

    def test_residue_step(self, poly):
        assert residue_step_holds(_fat(2), poly("x"), 1) is True

    def test_residue_step_not_applicable(self, poly):
        z = _points((0, 0), (1, 0), (2, 0), (3, 0))
        # four points on the line meet it in degree 4 > 1 + 1
        assert residue_step_holds(z, poly("y"), 1) is None


# -------------------------------------------------------------------
# Generic orders
# -------------------------------------------------------------------


class TestGenericOrders:
    def test_six_general_points(self):
        z = _points(*[(i, i * i) for i in range(6)])
        orders = generic_orders(z, "iso", trials=5, seed=0)
        assert orders.ord1 == 2
        assert orders.stable
        assert len(orders.trials) == 5

    def test_two_double_points(self):
        z = union_all([_fat(2), _fat(2, (1, 0))])
        orders = generic_orders(z, "iso", trials=5, seed=0)
        assert orders.ord0 == 2
        assert orders.ord1 == 3

    def test_seeded(self):
        z = _fat(2)
        assert generic_orders(z, trials=3, seed=4).to_json() == generic_orders(z, trials=3, seed=4).to_json()

    def test_def_mode_on_cluster(self, poly):
        z = build_scheme(poly("y^2 - x^3"), "s")
        orders = generic_orders(z, "def", trials=3, seed=0)
        assert orders.mode == "def"
        assert orders.ord1 >= 1
