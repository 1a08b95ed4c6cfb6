from fractions import Fraction

import pytest

from tiling.errors import NoRectangularDomain
from tiling.exactnum import ONE, ZERO, qs_sqrt
from tiling.lattice_points import (
    packs_by_lattice,
    periodize_into,
    points_in_open_box,
    rectangular_domain,
    reduce_mod_lattice,
    translational_overlaps,
)
from tiling.linalg2 import Lattice, Mat2, Vec2
from tiling.setalg import Rect, RectSet


def test_points_in_open_box():
    found = set(points_in_open_box(Lattice.standard(), Rect.of(-1, 2, -1, 1)))
    assert found == {Vec2.of(0, 0), Vec2.of(1, 0)}


def test_open_box_excludes_boundary():
    assert list(points_in_open_box(Lattice.standard(), Rect.of(0, 1, 0, 1))) == []
    assert list(points_in_open_box(Lattice.standard(), Rect.of(0, 2, 0, 1))) == []


def test_points_of_irrational_lattice(sqrt3_shear):
    box = Rect.of(Fraction(-1, 10), Fraction(1, 10), -10, 10)
    found = list(points_in_open_box(sqrt3_shear, box))
    # the only points near the vertical axis are i + j*sqrt(3) close to 0
    assert Vec2.of(0, 0) in found
    for p in found:
        assert abs(p.x) < Fraction(1, 10)
        assert abs(p.y) < 10


def test_points_in_thin_box():
    lattice = Lattice(Mat2.of(1, 0, Fraction(-1, 3), 1))
    box = Rect.of(Fraction(1, 2), Fraction(3, 2), -5, 5)
    expected = {Vec2.of(1, Fraction(-1, 3) + j) for j in range(-4, 6)}
    assert set(points_in_open_box(lattice, box)) == expected


def test_unit_square_packs_and_covers():
    square = RectSet.box(0, 1, 0, 1)
    assert packs_by_lattice(square, Lattice.standard())
    assert periodize_into(square, Lattice.standard(), Rect.of(-2, 2, -2, 2)) == RectSet.box(-2, 2, -2, 2)


def test_overlap_witness():
    wide = RectSet.box(0, 2, 0, 1)
    overlaps = list(translational_overlaps(wide, Lattice.standard()))
    assert not packs_by_lattice(wide, Lattice.standard())
    assert [o.shift for o in overlaps] == [Vec2.of(1, 0)]
    assert overlaps[0].measure == 1


def test_rectangular_domain_standard():
    domain = rectangular_domain(Lattice.standard())
    assert (domain.u, domain.h, domain.shear, domain.vertical) == (1, 1, 0, False)
    assert domain.box == Rect.of(0, 1, 0, 1)


def test_rectangular_domain_sheared(sqrt3_shear):
    domain = rectangular_domain(sqrt3_shear)
    assert domain.u == 1 and domain.h == 1
    assert domain.shear == qs_sqrt(3)
    assert domain.vector(0, 1) == Vec2(qs_sqrt(3), ONE)


def test_rectangular_domain_vertical_axis():
    lattice = Lattice(Mat2.of(2, 1, 0, 3))
    domain = rectangular_domain(lattice, axes=(1,))
    assert domain.vertical
    assert domain.u == 6 and domain.h == 1
    assert domain.shear == -3


def test_no_rectangular_domain():
    lattice = Lattice(Mat2.of(1, "sqrt(2)", "sqrt(2)", 1))
    with pytest.raises(NoRectangularDomain):
        rectangular_domain(lattice)


def test_reduce_mod_lattice_lands_in_domain():
    domain = rectangular_domain(Lattice.standard())
    s = RectSet.box(Fraction(1, 2), Fraction(3, 2), 0, 1)
    parts = reduce_mod_lattice(s, domain)
    assert len(parts) == 2
    moved = RectSet.union_all(part.translate(alpha) for alpha, part in parts)
    assert moved == RectSet([domain.box])
    assert {alpha for alpha, _ in parts} == {Vec2(ZERO, ZERO), Vec2.of(-1, 0)}


def test_long_boxes_are_searched_from_the_middle():
    tall = Rect.of(Fraction(-1, 2), Fraction(1, 2), -2 ** 60, 2 ** 60)
    points = points_in_open_box(Lattice.standard(), tall)
    assert [next(points) for _ in range(3)] == [Vec2.of(0, 0), Vec2.of(0, 1), Vec2.of(0, -1)]
    assert not packs_by_lattice(RectSet.box(0, Fraction(1, 10), 0, 2 ** 60), Lattice.standard())
