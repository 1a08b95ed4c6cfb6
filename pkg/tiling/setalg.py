"""Finite unions of half-open axis-parallel boxes, exact and rasterized."""
from __future__ import annotations

import logging
import operator
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np
import portion as P

from tiling.errors import NonDiagonal
from tiling.exactnum import ZERO, QuadScalar, as_scalar
from tiling.linalg2 import Mat2, Vec2

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Rect:
    """The half-open box ``[x1, x2) x [y1, y2)``."""

    x1: QuadScalar
    x2: QuadScalar
    y1: QuadScalar
    y2: QuadScalar

    @classmethod
    def of(cls, x1, x2, y1, y2) -> "Rect":
        return cls(as_scalar(x1), as_scalar(x2), as_scalar(y1), as_scalar(y2))

    @property
    def is_empty(self) -> bool:
        return self.x2 <= self.x1 or self.y2 <= self.y1

    @property
    def width(self) -> QuadScalar:
        return self.x2 - self.x1

    @property
    def height(self) -> QuadScalar:
        return self.y2 - self.y1

    def measure(self) -> QuadScalar:
        return (self.x2 - self.x1) * (self.y2 - self.y1)

    def intersect(self, other: "Rect") -> Optional["Rect"]:
        r = Rect(max(self.x1, other.x1), min(self.x2, other.x2), max(self.y1, other.y1), min(self.y2, other.y2))
        return None if r.is_empty else r

    def translate(self, v: Vec2) -> "Rect":
        return Rect(self.x1 + v.x, self.x2 + v.x, self.y1 + v.y, self.y2 + v.y)

    def scale(self, sx: QuadScalar, sy: QuadScalar) -> "Rect":
        x1, x2 = self.x1 * sx, self.x2 * sx
        y1, y2 = self.y1 * sy, self.y2 * sy
        # a negative factor flips the box; the half-open side moves by a null set
        if sx.sign() < 0:
            x1, x2 = x2, x1
        if sy.sign() < 0:
            y1, y2 = y2, y1
        return Rect(x1, x2, y1, y2)

    def swap_axes(self) -> "Rect":
        return Rect(self.y1, self.y2, self.x1, self.x2)

    def contains(self, x: QuadScalar, y: QuadScalar) -> bool:
        return self.x1 <= x < self.x2 and self.y1 <= y < self.y2

    def center(self) -> Vec2:
        return Vec2((self.x1 + self.x2) / 2, (self.y1 + self.y2) / 2)

    def abs_range(self, axis: int) -> tuple[QuadScalar, QuadScalar]:
        """``(min |t|, max |t|)`` of the coordinate ``axis`` over the closed box."""
        lo, hi = (self.x1, self.x2) if axis == 0 else (self.y1, self.y2)
        if lo.sign() <= 0 <= hi.sign():
            return ZERO, max(-lo, hi)
        return (lo, hi) if lo.sign() > 0 else (-hi, -lo)

    def as_strings(self) -> list[str]:
        return [str(self.x1), str(self.x2), str(self.y1), str(self.y2)]

    def __str__(self):
        return f"[{self.x1}, {self.x2}) x [{self.y1}, {self.y2})"


def _cross_section(rects: Iterable[Rect]) -> P.Interval:
    """Union of the y-ranges ``[y1, y2)`` of ``rects``."""
    return P.Interval(*(P.closedopen(r.y1, r.y2) for r in rects))


def _distribute(rects: Iterable[Rect], xs: Sequence[QuadScalar], index: dict) -> list[P.Interval]:
    """Cross-section of ``rects`` over every slab ``[xs[i], xs[i+1])``."""
    per: list[list[Rect]] = [[] for _ in range(max(len(xs) - 1, 0))]
    for r in rects:
        for i in range(index[r.x1], index[r.x2]):
            per[i].append(r)
    return [_cross_section(slab) for slab in per]


def _from_slabs(xs: Sequence[QuadScalar], slabs: Sequence[P.Interval]) -> tuple[Rect, ...]:
    """Join runs of identical adjacent slabs into boxes."""
    rects: list[Rect] = []
    start = 0
    for i in range(1, len(slabs) + 1):
        if i < len(slabs) and slabs[i] == slabs[start]:
            continue
        for atom in slabs[start]:
            if not atom.empty:
                rects.append(Rect(xs[start], xs[i], atom.lower, atom.upper))
        start = i
    rects.sort(key=lambda r: (r.x1, r.y1))
    return tuple(rects)


class RectSet:
    """Canonical finite union of half-open boxes.

    The canonical form splits the plane into vertical slabs at the box
    x-coordinates, merges the y-intervals inside each slab and then joins
    adjacent slabs with identical cross-sections. Two sets are equal
    (up to null sets) exactly when their canonical boxes coincide.
    """

    __slots__ = ("rects",)

    def __init__(self, rects: Iterable[Rect] = ()):
        rects = [r for r in rects if not r.is_empty]
        self.rects: tuple[Rect, ...] = self._canonical(rects) if rects else ()

    @staticmethod
    def _canonical(rects: list[Rect]) -> tuple[Rect, ...]:
        xs = sorted({r.x1 for r in rects} | {r.x2 for r in rects})
        index = {x: i for i, x in enumerate(xs)}
        return _from_slabs(xs, _distribute(rects, xs, index))

    @classmethod
    def _raw(cls, rects: tuple[Rect, ...]) -> "RectSet":
        obj = object.__new__(cls)
        obj.rects = rects
        return obj

    @classmethod
    def box(cls, x1, x2, y1, y2) -> "RectSet":
        return cls([Rect.of(x1, x2, y1, y2)])

    @classmethod
    def empty(cls) -> "RectSet":
        return cls._raw(())

    @classmethod
    def union_all(cls, sets: Iterable["RectSet"]) -> "RectSet":
        return cls([r for s in sets for r in s.rects])

    # -- boolean algebra ----------------------------------------------------
    def _apply(self, other: "RectSet", op: Callable[[P.Interval, P.Interval], P.Interval]) -> "RectSet":
        if not self.rects and not other.rects:
            return RectSet.empty()
        xs = sorted({r.x1 for r in self.rects} | {r.x2 for r in self.rects}
                    | {r.x1 for r in other.rects} | {r.x2 for r in other.rects})
        index = {x: i for i, x in enumerate(xs)}
        left = _distribute(self.rects, xs, index)
        right = _distribute(other.rects, xs, index)
        return RectSet._raw(_from_slabs(xs, [op(a, b) for a, b in zip(left, right)]))

    def union(self, other: "RectSet") -> "RectSet":
        return self._apply(other, operator.or_)

    def intersect(self, other: "RectSet") -> "RectSet":
        if not self.rects or not other.rects:
            return RectSet.empty()
        return self._apply(other, operator.and_)

    def subtract(self, other: "RectSet") -> "RectSet":
        if not self.rects or not other.rects:
            return self
        return self._apply(other, operator.sub)

    def symmetric_difference(self, other: "RectSet") -> "RectSet":
        return self._apply(other, lambda a, b: (a - b) | (b - a))

    __or__ = union
    __and__ = intersect
    __sub__ = subtract
    __xor__ = symmetric_difference

    # -- geometry -----------------------------------------------------------
    def measure(self) -> QuadScalar:
        total = ZERO
        for r in self.rects:
            total = total + r.measure()
        return total

    @property
    def is_empty(self) -> bool:
        return not self.rects

    def __len__(self):
        return len(self.rects)

    def __iter__(self) -> Iterator[Rect]:
        return iter(self.rects)

    def translate(self, v: Vec2) -> "RectSet":
        return RectSet._raw(tuple(r.translate(v) for r in self.rects))

    def scale(self, sx, sy) -> "RectSet":
        sx, sy = as_scalar(sx), as_scalar(sy)
        return RectSet([r.scale(sx, sy) for r in self.rects])

    def linear_image(self, m: Mat2) -> "RectSet":
        """``M(S)``; exact for diagonal ``M`` only."""
        if not m.is_diagonal():
            raise NonDiagonal(f"exact image under non-diagonal {m} is not a box union")
        return self.scale(m.m11, m.m22)

    def swap_axes(self) -> "RectSet":
        return RectSet([r.swap_axes() for r in self.rects])

    def bounding_box(self) -> Optional[Rect]:
        if not self.rects:
            return None
        return Rect(
            min(r.x1 for r in self.rects),
            max(r.x2 for r in self.rects),
            min(r.y1 for r in self.rects),
            max(r.y2 for r in self.rects),
        )

    def contains(self, x, y) -> bool:
        x, y = as_scalar(x), as_scalar(y)
        return any(r.contains(x, y) for r in self.rects)

    def abs_range(self, axis: int) -> tuple[QuadScalar, QuadScalar]:
        ranges = [r.abs_range(axis) for r in self.rects]
        return min(lo for lo, _ in ranges), max(hi for _, hi in ranges)

    def __eq__(self, other):
        if not isinstance(other, RectSet):
            return NotImplemented
        return self.rects == other.rects

    def __hash__(self):
        return hash(self.rects)

    def __repr__(self):
        return f"RectSet({', '.join(str(r) for r in self.rects) or 'empty'})"


# -- raster mode ---------------------------------------------------------------

def _cell_range(lo: QuadScalar, hi: QuadScalar, origin: QuadScalar, step: QuadScalar, n: int) -> tuple[int, int]:
    """Indices ``i`` whose cell centre ``origin + (i + 1/2)*step`` lies in ``[lo, hi)``."""
    half = QuadScalar.rational(1) / 2
    first = ((lo - origin) / step - half).ceil()
    stop = ((hi - origin) / step - half).ceil()
    return max(first, 0), min(stop, n)


@dataclass
class RasterSet:
    """Boolean occupancy of cell centres over a window; rows index y."""

    window: Rect
    mask: np.ndarray

    @classmethod
    def blank(cls, window: Rect, resolution: int) -> "RasterSet":
        return cls(window, np.zeros((resolution, resolution), dtype=bool))

    @property
    def resolution(self) -> int:
        return self.mask.shape[1]

    def cell_area(self) -> float:
        return float(self.window.measure()) / self.mask.size

    def measure(self) -> float:
        return float(self.mask.sum()) * self.cell_area()

    @classmethod
    def from_rectset(cls, s: RectSet, window: Rect, resolution: int) -> "RasterSet":
        raster = cls.blank(window, resolution)
        raster.mask = count_cells(s, window, resolution) > 0
        return raster


def count_cells(rects: Iterable[Rect], window: Rect, resolution: int, counts: Optional[np.ndarray] = None) -> np.ndarray:
    """Add one to every cell whose centre lies in one of ``rects``; exact index ranges."""
    if counts is None:
        counts = np.zeros((resolution, resolution), dtype=np.int32)
    dx = window.width / resolution
    dy = window.height / resolution
    for r in rects:
        i0, i1 = _cell_range(r.x1, r.x2, window.x1, dx, resolution)
        j0, j1 = _cell_range(r.y1, r.y2, window.y1, dy, resolution)
        if i0 < i1 and j0 < j1:
            counts[j0:j1, i0:i1] += 1
    return counts


def cell_centres(window: Rect, resolution: int) -> tuple[np.ndarray, np.ndarray]:
    x1, x2, y1, y2 = (float(v) for v in (window.x1, window.x2, window.y1, window.y2))
    xs = x1 + (np.arange(resolution) + 0.5) * (x2 - x1) / resolution
    ys = y1 + (np.arange(resolution) + 0.5) * (y2 - y1) / resolution
    return np.meshgrid(xs, ys)


def count_preimage_cells(s: RectSet, m_inv: Mat2, window: Rect, resolution: int,
                         counts: Optional[np.ndarray] = None) -> np.ndarray:
    """Add one to every cell ``c`` with ``m_inv @ c`` in ``s`` (float64, advisory)."""
    if counts is None:
        counts = np.zeros((resolution, resolution), dtype=np.int32)
    gx, gy = cell_centres(window, resolution)
    a, b, c, d = (float(e) for e in m_inv.entries())
    px = a * gx + b * gy
    py = c * gx + d * gy
    hit = np.zeros_like(gx, dtype=bool)
    for r in s.rects:
        hit |= (px >= float(r.x1)) & (px < float(r.x2)) & (py >= float(r.y1)) & (py < float(r.y2))
    counts += hit
    return counts


def rasterize(s: RectSet, window: Rect, resolution: int, m: Optional[Mat2] = None) -> RasterSet:
    """Cell-centre mask of ``S`` (or of ``M S``) over ``window``.

    Diagonal images are taken exactly; any other ``M`` is sampled through
    float64 preimages of the cell centres.
    """
    if resolution < 1:
        raise ValueError("resolution must be positive")
    if m is None:
        return RasterSet.from_rectset(s, window, resolution)
    if m.is_diagonal():
        return RasterSet.from_rectset(s.linear_image(m), window, resolution)
    raster = RasterSet.blank(window, resolution)
    raster.mask = count_preimage_cells(s, m.inverse(), window, resolution) > 0
    return raster
