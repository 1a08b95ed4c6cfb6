from fractions import Fraction

import pytest

from tiling.linalg2 import Lattice, Mat2
from tiling.setalg import RectSet

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


@pytest.fixture
def annulus() -> RectSet:
    """[-1/2, 1/2)^2 without [-1/4, 1/4)^2: a multiplicative tile for 2I."""
    return RectSet.box(-HALF, HALF, -HALF, HALF) - RectSet.box(-QUARTER, QUARTER, -QUARTER, QUARTER)


@pytest.fixture
def doubling() -> Mat2:
    return Mat2.diag(2, 2)


@pytest.fixture
def sqrt3_shear() -> Lattice:
    return Lattice(Mat2.of(1, "sqrt(3)", 0, 1))
