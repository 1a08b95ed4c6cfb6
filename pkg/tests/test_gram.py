from fractions import Fraction

import pytest

from tiling.construct import prop32_wavelet_set
from tiling.errors import NonDiagonal
from tiling.gram import GramComputer, default_indices, gram_check
from tiling.linalg2 import Lattice, Mat2, Vec2
from tiling.scb import scb_complete

A = Mat2.diag(2, 1)


def test_default_indices():
    indices = default_indices(1)
    assert len(indices) == 15
    assert indices[0] == (-1, Vec2.of(0, 0))


def test_diagonal_entries_are_the_tile_measure():
    tile = prop32_wavelet_set(2, 1, 3)
    computer = GramComputer(tile, A)
    value = computer.entry(1, Vec2.of(1, 0), 1, Vec2.of(1, 0))
    assert float(value.real) == pytest.approx(15 / 16)
    assert float(value.imag) == pytest.approx(0)


def test_levels_are_orthogonal():
    tile = prop32_wavelet_set(2, 1, 3)
    computer = GramComputer(tile, A)
    assert computer.entry(0, Vec2.of(0, 0), 2, Vec2.of(1, 0)) == 0


@pytest.mark.parametrize("depth", [8, 10])
def test_deviation_is_the_missing_measure(depth):
    report = gram_check(prop32_wavelet_set(2, 1, depth), A, default_indices(2))
    missing = Fraction(1, 2 ** (depth + 1))
    assert report.max_deviation == pytest.approx(float(missing), rel=1e-9)
    assert report.diagonal_min == pytest.approx(1 - float(missing), rel=1e-12)
    assert report.max_deviation < 0.06
    assert not report.passed


def test_gram_needs_diagonal_dilation():
    with pytest.raises(NonDiagonal):
        GramComputer(prop32_wavelet_set(2, 1, 2), Mat2.of(2, 1, 0, 1))


@pytest.mark.slow
def test_completed_tile_is_nearly_orthonormal(annulus, doubling):
    deviations = []
    for depth in (8, 10):
        tile = scb_complete(annulus, doubling, Lattice.standard(), depth).tile
        report = gram_check(tile, doubling, default_indices(2))
        assert report.max_deviation == pytest.approx(float(Fraction(1, 2) / 4 ** depth), rel=1e-9)
        deviations.append(report.max_deviation)
    assert deviations[0] < 0.06
    assert deviations[1] < deviations[0]
