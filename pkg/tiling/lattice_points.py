"""Lattice points in boxes, translational overlaps and reduction modulo a lattice."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from tiling.errors import NoRectangularDomain
from tiling.exactnum import ZERO, QuadScalar
from tiling.linalg2 import Lattice, Mat2, Vec2
from tiling.setalg import Rect, RectSet

logger = logging.getLogger(__name__)


def _det(u: Vec2, v: Vec2) -> QuadScalar:
    return u.x * v.y - u.y * v.x


@lru_cache(maxsize=8192)
def reduced_basis(basis: Mat2, sx: QuadScalar, sy: QuadScalar) -> tuple[Vec2, Vec2]:
    """Lagrange-Gauss reduce the columns of ``basis`` for the norm ``(x/sx)^2 + (y/sy)^2``.

    Enumeration over a reduced basis visits few empty rows even when the
    search box is extremely elongated.
    """
    wx = (sx * sx).inverse()
    wy = (sy * sy).inverse()

    def dot(u: Vec2, v: Vec2) -> QuadScalar:
        return u.x * v.x * wx + u.y * v.y * wy

    u, v = basis.columns()
    if dot(u, u) > dot(v, v):
        u, v = v, u
    while True:
        k = (dot(u, v) / dot(u, u)).round_half_up()
        if k:
            v = v - u.scale(k)
        if dot(v, v) >= dot(u, u):
            return u, v
        u, v = v, u


def _outward(start: int, stop: int) -> Iterator[int]:
    """``range(start, stop)`` ordered by distance from its middle."""
    if start >= stop:
        return
    mid = (start + stop - 1) // 2
    yield mid
    for step in range(1, max(mid - start, stop - 1 - mid) + 1):
        if mid + step < stop:
            yield mid + step
        if mid - step >= start:
            yield mid - step


def points_in_open_box(lattice: Lattice, box: Rect) -> Iterator[Vec2]:
    """Lattice points strictly inside ``box``, generated lazily row by row.

    Rows and the points within a row come out from the middle of the box
    outwards, so a search for any nonzero point near the centre of a very
    long box stops early.
    """
    if box.is_empty:
        return
    b1, b2 = reduced_basis(lattice.basis, box.width, box.height)
    det = _det(b1, b2)
    corners = [Vec2(x, y) for x in (box.x1, box.x2) for y in (box.y1, box.y2)]
    # j(p) = det(b1, p) / det(b1, b2) is the row of p
    rows = [_det(b1, c) / det for c in corners]
    j_lo, j_hi = min(rows).floor() + 1, max(rows).ceil() - 1
    for j in _outward(j_lo, j_hi + 1):
        base = b2.scale(j)
        lo, hi = None, None
        empty = False
        for coord, b, c1, c2 in ((0, b1.x, box.x1, box.x2), (1, b1.y, box.y1, box.y2)):
            offset = base.x if coord == 0 else base.y
            if not b:
                if not (c1 < offset < c2):
                    empty = True
                    break
                continue
            t1, t2 = (c1 - offset) / b, (c2 - offset) / b
            if t1 > t2:
                t1, t2 = t2, t1
            lo = t1 if lo is None or t1 > lo else lo
            hi = t2 if hi is None or t2 < hi else hi
        if empty or lo is None:
            continue
        for i in _outward(lo.floor() + 1, hi.ceil()):
            yield b1.scale(i) + base


def difference_box(a: Rect, b: Rect) -> Rect:
    """Translations ``t`` with ``a`` and ``b + t`` overlapping form the open box returned."""
    return Rect(a.x1 - b.x2, a.x2 - b.x1, a.y1 - b.y2, a.y2 - b.y1)


def _positive(v: Vec2) -> bool:
    return v.x.sign() > 0 or (not v.x and v.y.sign() > 0)


@dataclass(frozen=True)
class TranslationOverlap:
    first: int
    second: int
    shift: Vec2
    region: Rect

    @property
    def measure(self) -> QuadScalar:
        return self.region.measure()


def translational_overlaps(s: RectSet, lattice: Lattice) -> Iterator[TranslationOverlap]:
    """Every ``(i, j, alpha)`` with ``box_i`` meeting ``box_j + alpha`` in positive measure.

    Pairs with ``i == j`` are reported once per ``{alpha, -alpha}``.
    """
    boxes = s.rects
    for i, bi in enumerate(boxes):
        for j in range(i, len(boxes)):
            bj = boxes[j]
            for alpha in points_in_open_box(lattice, difference_box(bi, bj)):
                if i == j and not _positive(alpha):
                    continue
                if i != j and alpha.is_zero():
                    continue
                region = bi.intersect(bj.translate(alpha))
                if region is not None:
                    yield TranslationOverlap(i, j, alpha, region)


def packs_by_lattice(s: RectSet, lattice: Lattice) -> bool:
    return next(translational_overlaps(s, lattice), None) is None


def periodize_into(s: RectSet, lattice: Lattice, window: Rect) -> RectSet:
    """``(S + Lambda) ∩ window`` as an exact box union."""
    pieces: list[Rect] = []
    for b in s.rects:
        for alpha in points_in_open_box(lattice, difference_box(window, b)):
            part = window.intersect(b.translate(alpha))
            if part is not None:
                pieces.append(part)
    return RectSet(pieces)


def lattice_hull(s: RectSet, x: RectSet, lattice: Lattice) -> list[tuple[int, Vec2, Rect]]:
    """Pieces of ``S ∩ (X + Lambda)`` as ``(index of S box, alpha, box)``."""
    found: list[tuple[int, Vec2, Rect]] = []
    for i, sb in enumerate(s.rects):
        for xb in x.rects:
            for alpha in points_in_open_box(lattice, difference_box(sb, xb)):
                part = sb.intersect(xb.translate(alpha))
                if part is not None:
                    found.append((i, alpha, part))
    return found


# -- reduction modulo a lattice ------------------------------------------------

@dataclass(frozen=True)
class RectangularDomain:
    """A box fundamental domain ``[0, u) x [0, h)`` of a lattice.

    The lattice is spanned by ``(u, 0)`` and ``(shear, h)``; with ``vertical``
    the roles of x and y are exchanged.
    """

    u: QuadScalar
    h: QuadScalar
    shear: QuadScalar
    vertical: bool = False

    @property
    def box(self) -> Rect:
        if self.vertical:
            return Rect(ZERO, self.h, ZERO, self.u)
        return Rect(ZERO, self.u, ZERO, self.h)

    def vector(self, i: int, j: int) -> Vec2:
        """``i * step + j * lift`` in plane coordinates."""
        along = self.u * i + self.shear * j
        across = self.h * j
        return Vec2(across, along) if self.vertical else Vec2(along, across)


def _primitive_axis_vector(basis: Mat2, axis: int) -> Optional[tuple[int, int]]:
    """Coprime ``(i, j)`` with ``i*b1 + j*b2`` lying on coordinate ``axis``."""
    c1, c2 = basis.columns()
    # the other coordinate must vanish
    a, b = (c1.y, c2.y) if axis == 0 else (c1.x, c2.x)
    if not a:
        return 1, 0
    if not b:
        return 0, 1
    ratio = -(a / b)
    if not ratio.is_rational:
        return None
    r = Fraction(ratio.a)
    return r.denominator, r.numerator


def rectangular_domain(lattice: Lattice, axes: Sequence[int] = (0, 1)) -> RectangularDomain:
    """A box fundamental domain, available when a lattice vector lies on one of ``axes``."""
    for axis in axes:
        found = _primitive_axis_vector(lattice.basis, axis)
        if found is None:
            continue
        i, j = found
        g, k, l = _ext_gcd(i, j)
        c1, c2 = lattice.basis.columns()
        step = c1.scale(i) + c2.scale(j)
        # k*i + l*j == 1, so (step, -l*c1 + k*c2) is a basis
        lift = c1.scale(-l) + c2.scale(k)
        if axis == 0:
            u, h, shear = step.x, lift.y, lift.x
        else:
            u, h, shear = step.y, lift.x, lift.y
        if u.sign() < 0:
            u = -u
        if h.sign() < 0:
            h, shear = -h, -shear
        return RectangularDomain(u=u, h=h, shear=shear, vertical=axis == 1)
    raise NoRectangularDomain(f"no lattice vector lies on coordinate axes {tuple(axes)}")


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def reduce_box(box: Rect, domain: RectangularDomain) -> list[tuple[Vec2, Rect]]:
    """Split ``box`` into pieces ``p`` with ``p + alpha`` inside the domain box."""
    local = box.swap_axes() if domain.vertical else box
    pieces: list[tuple[Vec2, Rect]] = []
    j_first = (local.y1 / domain.h).floor()
    j_last = (local.y2 / domain.h).ceil()
    for j in range(j_first, j_last):
        row = Rect(local.x1, local.x2, max(local.y1, domain.h * j), min(local.y2, domain.h * (j + 1)))
        if row.is_empty:
            continue
        shift_x = domain.shear * j
        i_first = ((row.x1 - shift_x) / domain.u).floor()
        i_last = ((row.x2 - shift_x) / domain.u).ceil()
        for i in range(i_first, i_last):
            lo = shift_x + domain.u * i
            cell = Rect(max(row.x1, lo), min(row.x2, lo + domain.u), row.y1, row.y2)
            if cell.is_empty:
                continue
            alpha = domain.vector(-i, -j)
            piece = cell.swap_axes() if domain.vertical else cell
            pieces.append((alpha, piece))
    return pieces


def reduce_mod_lattice(s: RectSet, domain: RectangularDomain) -> list[tuple[Vec2, RectSet]]:
    """Group the pieces of ``s`` by the lattice vector that moves them into the domain."""
    grouped: dict[Vec2, list[Rect]] = {}
    for box in s.rects:
        for alpha, piece in reduce_box(box, domain):
            grouped.setdefault(alpha, []).append(piece)
    return [(alpha, RectSet(parts)) for alpha, parts in grouped.items()]
