from fractions import Fraction

import pytest

from models import TilingCase
from tiling.classify import EXIT_CODES, classify_lattice, classify_wavelet
from tiling.errors import NonRationalMatrix, Singular
from tiling.linalg2 import Lattice, Mat2

HALF = Fraction(1, 2)


@pytest.mark.parametrize("rows, case", [
    ([[1, 1], [0, 1]], TilingCase.DetOne_NoTile),
    ([[2, 1], [1, 1]], TilingCase.DetOne_NoTile),
    ([[2, 0], [0, 2]], TilingCase.Expanding_Exists),
    ([[1, -1], [1, 1]], TilingCase.Expanding_Exists),
    ([[2, -1], [1, 2]], TilingCase.Expanding_Exists),
    ([[2, 0], [0, 1]], TilingCase.Expanding_Exists),
    ([[0, 2], [1, 0]], TilingCase.Expanding_Exists),
    ([[3, 0], [0, HALF]], TilingCase.Mixed_RationalSlope_NoTile),
    ([[3, 1], [0, HALF]], TilingCase.Mixed_RationalSlope_NoTile),
    ([[1, 1], [HALF, 2]], TilingCase.Mixed_IrrationalSlope_Exists),
    ([[Fraction(1, 3), 0], [0, 2]], TilingCase.Mixed_RationalSlope_NoTile),
])
def test_standard_lattice_battery(rows, case):
    report = classify_lattice(Mat2.from_rows(rows))
    assert report.case is case
    assert report.exists == case.exists


def test_irrational_lattice_makes_the_slope_irrational():
    lattice = Lattice(Mat2.of(1, "sqrt(3)", 0, 1))
    report = classify_lattice(Mat2.diag(3, HALF), lattice)
    assert report.case is TilingCase.Mixed_IrrationalSlope_Exists
    assert report.conjugated_matrix == [["3", "5/2*sqrt(3)"], ["0", "1/2"]]
    assert report.eigenvector == ["-sqrt(3)", "1"]
    assert report.slope_rational is False
    assert report.exists is True


def test_rational_slope_reports_eigenvector():
    report = classify_lattice(Mat2.of(3, 1, 0, HALF))
    assert report.spectrum.lambda1 == "3"
    assert report.spectrum.lambda2 == "1/2"
    assert report.eigenvector == ["-2/5", "1"]
    assert report.slope_rational is True


def test_quadratic_eigenvalues():
    report = classify_lattice(Mat2.of(1, 1, HALF, 2))
    assert report.spectrum.det == "3/2"
    assert report.spectrum.discriminant == "3"
    assert report.eigenvector == ["-1-sqrt(3)", "1"]


def test_mismatched_radicals_are_unsupported():
    report = classify_lattice(Mat2.of(1, 1, HALF, 2), Lattice(Mat2.of(1, "sqrt(2)", 0, 1)))
    assert report.case is TilingCase.Unsupported
    assert report.exists is None
    assert EXIT_CODES[report.case] == 3


def test_contractions_are_inverted_first():
    report = classify_lattice(Mat2.diag(Fraction(1, 3), 2))
    assert report.inverted
    assert report.normalized_matrix == [["3", "0"], ["0", "1/2"]]
    assert report.eigenvector == ["0", "1"]


def test_complex_pair_summary():
    report = classify_lattice(Mat2.of(2, -1, 1, 2))
    assert report.spectrum.kind == "ComplexPair"
    assert report.spectrum.modulus_sq == "5"
    assert report.spectrum.lambda1 is None


def test_exit_codes():
    assert EXIT_CODES[TilingCase.Expanding_Exists] == 0
    assert EXIT_CODES[TilingCase.Mixed_IrrationalSlope_Exists] == 0
    assert EXIT_CODES[TilingCase.DetOne_NoTile] == 1
    assert EXIT_CODES[TilingCase.Mixed_RationalSlope_NoTile] == 1


def test_wavelet_reads_the_transpose():
    report = classify_wavelet(Mat2.of(3, 1, 0, HALF))
    assert report.subject == "wavelet"
    assert report.lattice is None
    assert report.matrix == [["3", "1"], ["0", "1/2"]]
    assert report.case is TilingCase.Mixed_RationalSlope_NoTile
    assert report.eigenvector == ["0", "1"]


def test_wavelet_irrational_transpose():
    report = classify_wavelet(Mat2.of(1, HALF, 1, 2))
    assert report.case is TilingCase.Mixed_IrrationalSlope_Exists


@pytest.mark.parametrize("matrix, error", [
    (Mat2.of("sqrt(2)", 0, 0, 1), NonRationalMatrix),
    (Mat2.of(1, 1, 1, 1), Singular),
])
def test_bad_matrices(matrix, error):
    with pytest.raises(error):
        classify_lattice(matrix)
