"""Gram matrix of the wavelet system generated by a candidate wavelet set."""
from __future__ import annotations

import logging
from typing import Sequence

import mpmath

from models import GramReport
from tiling.errors import NonDiagonal
from tiling.exactnum import QuadScalar
from tiling.linalg2 import Mat2, Vec2
from tiling.setalg import RectSet

logger = logging.getLogger(__name__)


def _segment_integral(c: QuadScalar, lo: QuadScalar, hi: QuadScalar) -> mpmath.mpc:
    """``∫_lo^hi exp(-2πi c t) dt``; ``c == 0`` is decided exactly."""
    if not c:
        return mpmath.mpc((hi - lo).to_mpf())
    w = mpmath.mpc(0, -2) * mpmath.pi * c.to_mpf()
    return (mpmath.exp(w * hi.to_mpf()) - mpmath.exp(w * lo.to_mpf())) / w


class GramComputer:
    """Inner products ``<psi_{n,alpha}, psi_{m,beta}>`` for ``psi^ = 1_T``.

    ``psi_{n,alpha}(x) = |det A|^(n/2) psi(A^n x - alpha)``, and by Plancherel
    the inner product is an exponential integral over ``A^n T ∩ A^m T``
    (``A`` diagonal, so ``A^T = A``).
    """

    def __init__(self, tile: RectSet, a: Mat2, dps: int = 30):
        if not a.is_diagonal():
            raise NonDiagonal(f"gram entries are integrated over boxes; {a} is not diagonal")
        self.tile = tile
        self.a = a
        self.dps = dps
        self.det = abs(a.det())
        self._levels: dict[int, RectSet] = {}

    def level(self, n: int) -> RectSet:
        if n not in self._levels:
            self._levels[n] = self.tile.linear_image(self.a.power(n))
        return self._levels[n]

    def entry(self, n: int, alpha: Vec2, m: int, beta: Vec2) -> mpmath.mpc:
        region = self.level(n) & self.level(m)
        if region.is_empty:
            return mpmath.mpc(0)
        d1, d2 = self.a.m11, self.a.m22
        c1 = alpha.x * d1 ** (-n) - beta.x * d1 ** (-m)
        c2 = alpha.y * d2 ** (-n) - beta.y * d2 ** (-m)
        total = mpmath.mpc(0)
        for box in region.rects:
            total += _segment_integral(c1, box.x1, box.x2) * _segment_integral(c2, box.y1, box.y2)
        scale = mpmath.power(self.det.to_mpf(), -mpmath.mpf(n + m) / 2)
        return total * scale

    def matrix(self, indices: Sequence[tuple[int, Vec2]]) -> list[list[mpmath.mpc]]:
        size = len(indices)
        g = [[mpmath.mpc(0)] * size for _ in range(size)]
        with mpmath.workdps(self.dps):
            for i in range(size):
                for j in range(i, size):
                    value = self.entry(indices[i][0], indices[i][1], indices[j][0], indices[j][1])
                    g[i][j] = value
                    g[j][i] = mpmath.conj(value)
        return g


def gram_check(tile: RectSet, a: Mat2, indices: Sequence[tuple[int, Vec2]],
               tolerance: float = 1e-6, dps: int = 30) -> GramReport:
    """Largest deviation of the Gram matrix from the identity over ``indices``."""
    computer = GramComputer(tile, a, dps=dps)
    g = computer.matrix(indices)
    worst, worst_pair = 0.0, [0, 0]
    diagonal_min = float("inf")
    for i, row in enumerate(g):
        for j, value in enumerate(row):
            target = 1 if i == j else 0
            deviation = float(abs(value - target))
            if deviation > worst:
                worst, worst_pair = deviation, [i, j]
            if i == j:
                diagonal_min = min(diagonal_min, float(value.real))
    logger.info(f"gram check over {len(indices)} functions: max deviation {worst:.3e}")
    return GramReport(
        indices=[f"{n}:({alpha.x},{alpha.y})" for n, alpha in indices],
        max_deviation=worst,
        worst_pair=worst_pair,
        diagonal_min=diagonal_min,
        tolerance=tolerance,
        passed=worst <= tolerance,
        precision_digits=dps,
    )


def default_indices(levels: int = 2) -> list[tuple[int, Vec2]]:
    """``n`` in ``[-levels, levels]`` with ``alpha`` in ``{0, ±e1, ±e2}``."""
    shifts = [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)]
    return [(n, Vec2.of(x, y)) for n in range(-levels, levels + 1) for x, y in shifts]
