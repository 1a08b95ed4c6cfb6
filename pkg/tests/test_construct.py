from fractions import Fraction

import pytest

from tiling.construct import (
    address_map,
    address_of_point,
    expanding_seed,
    find_packing_power,
    finite_measure_mult_tile,
    fitted_prop32,
    prop32_defect,
    prop32_lattice,
    prop32_wavelet_set,
)
from tiling.errors import BadSpectrum, CapExceeded, NoRectangularDomain, NonDiagonal, NotCovered
from tiling.lattice_points import packs_by_lattice
from tiling.linalg2 import Lattice, Mat2, Vec2
from tiling.setalg import RectSet

HALF = Fraction(1, 2)


@pytest.mark.parametrize("depth, measure", [(0, Fraction(1, 2)), (2, Fraction(7, 8)), (5, Fraction(63, 64))])
def test_prop32_measure(depth, measure):
    assert prop32_wavelet_set(2, 1, depth).measure() == measure


def test_prop32_measure_for_other_base():
    # 1 - 3^-(N+1) for lambda1 = 3
    assert prop32_wavelet_set(3, -1, 2).measure() == Fraction(26, 27)


@pytest.mark.parametrize("shear", ["0", "1/3", "sqrt(3)"])
def test_prop32_packs_by_shear_lattices(shear):
    tile = prop32_wavelet_set(2, 1, 4)
    assert packs_by_lattice(tile, prop32_lattice(shear))


def test_prop32_packs_multiplicatively():
    tile = prop32_wavelet_set(2, 1, 4)
    a = Mat2.diag(2, 1)
    for k in range(1, 11):
        assert (tile & tile.linear_image(a.power(k))).is_empty


def test_prop32_defect():
    assert prop32_defect(2, 8, 8) == Fraction(1, 32)
    assert prop32_defect(3, 8, 8) == Fraction(16, 19683)


@pytest.mark.parametrize("l1, l2", [(HALF, 1), (2, HALF), (1, 1)])
def test_prop32_needs_the_right_spectrum(l1, l2):
    with pytest.raises(BadSpectrum):
        prop32_wavelet_set(l1, l2, 2)


def test_fitted_prop32_standard_lattice():
    tile, t = fitted_prop32(2, 1, Lattice.standard(), 3)
    assert t == 0
    assert tile == prop32_wavelet_set(2, 1, 3)


def test_fitted_prop32_stretches_onto_lattice():
    lattice = Lattice(Mat2.of(2, 1, 0, 3))
    tile, t = fitted_prop32(2, 1, lattice, 3)
    assert t == HALF
    assert tile.measure() == 6 * Fraction(15, 16)
    assert packs_by_lattice(tile, lattice)


def test_fitted_prop32_needs_vertical_vector():
    with pytest.raises(NoRectangularDomain):
        fitted_prop32(2, 1, Lattice(Mat2.of(1, "sqrt(2)", 0, 1)), 3)


def test_band_tile_measures():
    a = Mat2.diag(3, HALF)
    one = finite_measure_mult_tile(a, 1)
    two = finite_measure_mult_tile(a, 2)
    assert one.measure() == Fraction(4, 3)
    assert two.measure() == Fraction(20, 9)
    extra = two - one
    assert extra.measure() == Fraction(8, 9)
    assert (extra & RectSet.box(-1, 1, 0, 8)).measure() == Fraction(4, 9)


def test_band_tile_packs_multiplicatively():
    a = Mat2.diag(3, HALF)
    omega = finite_measure_mult_tile(a, 3)
    for k in range(1, 8):
        assert (omega & omega.linear_image(a.power(k))).is_empty


def test_band_tile_rejects_other_spectra():
    with pytest.raises(BadSpectrum):
        finite_measure_mult_tile(Mat2.diag(2, 2), 2)
    with pytest.raises(NonDiagonal):
        finite_measure_mult_tile(Mat2.of(3, 1, 0, HALF), 2)
    with pytest.raises(ValueError):
        finite_measure_mult_tile(Mat2.diag(3, HALF), 0)


def test_expanding_seed_is_the_annulus(annulus, doubling):
    seed, power = expanding_seed(doubling, Lattice.standard(), 8)
    assert power == 0
    assert seed == annulus
    assert seed.measure() == Fraction(3, 4)


def test_expanding_seed_shrinks_for_fine_lattices(doubling):
    fine = Lattice(Mat2.diag(Fraction(1, 4), Fraction(1, 4)))
    seed, power = expanding_seed(doubling, fine, 8)
    assert power == 2
    assert packs_by_lattice(seed, fine)


def test_find_packing_power():
    n, image = find_packing_power(RectSet.box(-1, 1, -1, 1), Mat2.diag(2, 2), Lattice.standard(), 8)
    assert n == 1
    assert image == RectSet.box(-HALF, HALF, -HALF, HALF)


def test_find_packing_power_cap():
    with pytest.raises(CapExceeded):
        find_packing_power(RectSet.box(-1, 1, -1, 1), Mat2.diag(3, HALF), Lattice.standard(), 5)
    with pytest.raises(ValueError):
        find_packing_power(RectSet.box(-1, 1, -1, 1), Mat2.diag(2, 2), Lattice.standard(), 0)


def test_address_of_point(annulus, doubling):
    assert address_of_point(annulus, doubling, 3, 0, 8) == (3, Vec2.of(Fraction(3, 8), 0))
    assert address_of_point(annulus, doubling, Fraction(3, 8), 0, 8) == (0, Vec2.of(Fraction(3, 8), 0))
    n, p = address_of_point(annulus, doubling, Fraction(1, 10), Fraction(1, 10), 8)
    assert n == -2
    assert p == Vec2.of(Fraction(2, 5), Fraction(2, 5))


def test_address_of_point_misses(annulus, doubling):
    with pytest.raises(NotCovered):
        address_of_point(annulus, doubling, 3, 0, 2)
    with pytest.raises(NotCovered):
        address_of_point(annulus, doubling, 0, 0, 8)


def test_address_map_partitions_the_set(annulus, doubling):
    s = RectSet.box(-1, 1, -1, 1) - RectSet.box(-Fraction(1, 4), Fraction(1, 4), -Fraction(1, 4), Fraction(1, 4))
    decomposition = address_map(annulus, doubling, s, 6)
    assert decomposition.uncovered.is_empty
    assert sorted(decomposition.parts) == [-1, 0]
    assert decomposition.image(doubling) == annulus
    regions = decomposition.regions(doubling)
    assert regions == {0: annulus, 1: annulus}
    assert sum(4 ** n * r.measure() for n, r in regions.items()) == s.measure()


def test_address_map_strict(annulus, doubling):
    with pytest.raises(NotCovered):
        address_map(annulus, doubling, RectSet.box(0, 1, 0, 1), 3, strict=True)
