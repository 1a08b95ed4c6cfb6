"""Explicit tiles, multiplicative seeds, address maps and packing powers."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from tiling.errors import BadSpectrum, CapExceeded, NonDiagonal, NotCovered
from tiling.exactnum import ONE, QuadScalar, as_scalar
from tiling.lattice_points import packs_by_lattice, rectangular_domain
from tiling.linalg2 import Lattice, Mat2, Vec2
from tiling.setalg import Rect, RectSet

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


def _require_diagonal(a: Mat2) -> None:
    if not a.is_diagonal():
        raise NonDiagonal(f"exact constructions work in a diagonal frame, got {a}")


# -- the explicit tile for a unimodular eigenvalue ------------------------------

def prop32_lattice(shear=0) -> Lattice:
    """``Q^-1 Z^2`` for the shear ``Q = [[1, 0], [t, 1]]``."""
    t = as_scalar(shear)
    return Lattice(Mat2.of(1, 0, -t, 1))


def prop32_wavelet_set(lambda1, lambda2, depth: int) -> RectSet:
    """Depth-``N`` truncation ``T_N = U_0 x I_0 ∪ ... ∪ U_N x I_N``.

    With ``a_n = |lambda1|^-n / 2`` the pieces are
    ``U_n = [-a_n, -a_{n+1}) ∪ [a_{n+1}, a_n)`` and
    ``I_n = [-n-1/2, -n) ∪ [n, n+1/2)`` (``I_0 = [-1/2, 1/2)``).
    ``T_N`` packs by ``diag(lambda1, lambda2)`` and by every shear lattice
    from :func:`prop32_lattice`; the full union tiles both.
    """
    l1, l2 = as_scalar(lambda1), as_scalar(lambda2)
    if abs(l1) <= 1 or abs(l2) != 1:
        raise BadSpectrum(f"need |lambda1| > 1 and lambda2 = +-1, got {l1}, {l2}")
    if depth < 0:
        raise ValueError("depth must be non-negative")
    base = abs(l1)
    rects: list[Rect] = []
    a_n = QuadScalar.rational(HALF)
    for n in range(depth + 1):
        a_next = a_n / base
        if n == 0:
            bands = [(-QuadScalar.rational(HALF), QuadScalar.rational(HALF))]
        else:
            bands = [(QuadScalar.rational(-n) - HALF, QuadScalar.rational(-n)),
                     (QuadScalar.rational(n), QuadScalar.rational(n) + HALF)]
        for y1, y2 in bands:
            rects.append(Rect(-a_n, -a_next, y1, y2))
            rects.append(Rect(a_next, a_n, y1, y2))
        a_n = a_next
    return RectSet(rects)


def fitted_prop32(lambda1, lambda2, lattice: Lattice, depth: int) -> tuple[RectSet, QuadScalar]:
    """``T_N`` stretched onto a lattice with a vertical vector; returns the set and its shear ``t``.

    A lattice ``{i (0, u) + j (h, s)}`` is ``diag(h, u)`` applied to the shear
    lattice with ``t = -s/u``, and the diagonal stretch commutes with the dilation.
    """
    domain = rectangular_domain(lattice, axes=(1,))
    t = -domain.shear / domain.u
    return prop32_wavelet_set(lambda1, lambda2, depth).scale(domain.h, domain.u), t


def prop32_defect(lambda1, depth: int, height) -> QuadScalar:
    """Translational coverage defect of ``T_N`` over ``[-1/2, 1/2) x [-M, M)``."""
    a_next = QuadScalar.rational(HALF) / abs(as_scalar(lambda1)) ** (depth + 1)
    return a_next * 2 * (as_scalar(height) * 2)


# -- multiplicative seeds -----------------------------------------------------------

def finite_measure_mult_tile(a: Mat2, bands: int) -> RectSet:
    """A multiplicative tile of finite measure for ``diag(l1, l2)``, ``|l1| > 1 >= |l2|``.

    The strip ``{1/(2|l1|) <= |x| < 1/2}`` is cut into bands ``k <= |y| < k+1``
    and band ``k`` is pushed by ``A^-k``. Only the first ``bands`` bands are kept.
    """
    _require_diagonal(a)
    l1, l2 = a.m11, a.m22
    if abs(l1) <= 1 or abs(l2) > 1 or abs(l1 * l2) <= 1:
        raise BadSpectrum(f"need |l1| > 1 >= |l2| and |l1*l2| > 1, got {l1}, {l2}")
    if bands < 1:
        raise ValueError("bands must be at least 1")
    inner = QuadScalar.rational(HALF) / abs(l1)
    half = QuadScalar.rational(HALF)
    pieces: list[RectSet] = []
    for k in range(bands):
        if k == 0:
            ys = [(-ONE, ONE)]
        else:
            ys = [(QuadScalar.rational(k), QuadScalar.rational(k + 1)),
                  (QuadScalar.rational(-k - 1), QuadScalar.rational(-k))]
        band = RectSet([Rect(x1, x2, y1, y2) for x1, x2 in ((inner, half), (-half, -inner)) for y1, y2 in ys])
        pieces.append(band.linear_image(a.power(-k)))
    return RectSet.union_all(pieces)


def expanding_seed(a: Mat2, lattice: Lattice, cap: int) -> tuple[RectSet, int]:
    """``A^-n (B \\ A^-1 B)`` for ``B = [-1/2, 1/2)^2``, shrunk until it packs by ``lattice``."""
    _require_diagonal(a)
    if abs(a.m11) <= 1 or abs(a.m22) <= 1:
        raise BadSpectrum(f"{a} is not expanding")
    outer = RectSet.box(-HALF, HALF, -HALF, HALF)
    annulus = outer - outer.linear_image(a.inverse())
    if packs_by_lattice(annulus, lattice):
        return annulus, 0
    n, seed = find_packing_power(annulus, a, lattice, cap)
    return seed, n


def find_packing_power(s: RectSet, a: Mat2, lattice: Lattice, cap: int, start: int = 1) -> tuple[int, RectSet]:
    """Smallest ``n`` in ``[start, cap]`` for which ``A^-n S`` packs by ``lattice``."""
    _require_diagonal(a)
    if cap < start:
        raise ValueError(f"cap {cap} is below the starting power {start}")
    contraction = a.inverse()
    image = s.linear_image(contraction.power(start))
    for n in range(start, cap + 1):
        if packs_by_lattice(image, lattice):
            logger.debug(f"A^-{n} S packs by the lattice")
            return n, image
        image = image.linear_image(contraction)
    raise CapExceeded(cap)


# -- address maps ------------------------------------------------------------------

def _lowest_power(base: QuadScalar, value: QuadScalar) -> int:
    """Smallest ``m`` with ``base**m >= value`` for ``base > 1`` and ``value > 0``."""
    m, p = 0, ONE
    if p >= value:
        while p / base >= value:
            p, m = p / base, m - 1
        return m
    while p < value:
        p, m = p * base, m + 1
    return m


def _highest_power(base: QuadScalar, value: QuadScalar) -> int:
    """Largest ``m`` with ``base**m <= value`` for ``base > 1`` and ``value > 0``."""
    m = _lowest_power(base, value)
    return m if base ** m == value else m - 1


def orbit_window(a: Mat2, box: Rect, target: RectSet, depth: int) -> tuple[int, int]:
    """Powers ``m`` for which ``A^m box`` can meet ``target``, read off coordinate magnitudes."""
    lo, hi = -depth, depth
    bounded_lo = bounded_hi = False
    for axis, lam in ((0, abs(a.m11)), (1, abs(a.m22))):
        if lam == 1:
            continue
        b_lo, b_hi = box.abs_range(axis)
        t_lo, t_hi = target.abs_range(axis)
        # need lam^m * b_hi >= t_lo and lam^m * b_lo <= t_hi
        base, flip = (lam, 1) if lam > 1 else (lam.inverse(), -1)
        lower = upper = None
        if t_lo.sign() > 0:
            bound = _lowest_power(base, t_lo / b_hi)
            lower, upper = (bound, None) if flip == 1 else (None, -bound)
        if b_lo.sign() > 0:
            bound = _highest_power(base, t_hi / b_lo)
            if flip == 1:
                upper = bound if upper is None else min(upper, bound)
            else:
                lower = -bound if lower is None else max(lower, -bound)
        if lower is not None:
            lo = lower if not bounded_lo else max(lo, lower)
            bounded_lo = True
        if upper is not None:
            hi = upper if not bounded_hi else min(hi, upper)
            bounded_hi = True
    if bounded_lo and not bounded_hi:
        hi = max(hi, lo + 2 * depth)
    if bounded_hi and not bounded_lo:
        lo = min(lo, hi - 2 * depth)
    return lo, hi


@dataclass
class AddressDecomposition:
    """``S = ⊔ parts[m]`` with ``A^m parts[m] ⊂ Omega``, plus what was not reached."""

    parts: dict[int, RectSet] = field(default_factory=dict)
    uncovered: RectSet = field(default_factory=RectSet.empty)

    def image(self, a: Mat2) -> RectSet:
        return RectSet.union_all(part.linear_image(a.power(m)) for m, part in self.parts.items())

    def regions(self, a: Mat2) -> dict[int, RectSet]:
        """``{n: R_n}`` with ``R_n ⊂ Omega`` and ``S = ⊔ A^n R_n``."""
        return {-m: part.linear_image(a.power(m)) for m, part in sorted(self.parts.items(), reverse=True)}


def address_map(omega: RectSet, a: Mat2, s: RectSet, depth: int, strict: bool = False) -> AddressDecomposition:
    """Split ``S`` by the unique power that moves each point into the multiplicative tile ``Omega``."""
    _require_diagonal(a)
    found: dict[int, list[RectSet]] = {}
    pulled: dict[int, RectSet] = {}
    for box in s.rects:
        piece = RectSet([box])
        lo, hi = orbit_window(a, box, omega, depth)
        for m in range(lo, hi + 1):
            if m not in pulled:
                pulled[m] = omega.linear_image(a.power(-m))
            hit = piece & pulled[m]
            if not hit.is_empty:
                found.setdefault(m, []).append(hit)
    decomposition = AddressDecomposition(parts={m: RectSet.union_all(v) for m, v in sorted(found.items())})
    covered = RectSet.union_all(decomposition.parts.values())
    decomposition.uncovered = s - covered
    if strict and not decomposition.uncovered.is_empty:
        raise NotCovered(
            f"part of the set never meets the tile (measure {decomposition.uncovered.measure()})",
            decomposition.uncovered.measure(),
        )
    return decomposition


def address_of_point(omega: RectSet, a: Mat2, x, y, depth: int) -> tuple[int, Vec2]:
    """The unique ``(n, p)`` with ``(x, y) = A^n p`` and ``p`` in ``Omega``, for ``|n| <= depth``."""
    _require_diagonal(a)
    x, y = as_scalar(x), as_scalar(y)
    for n in sorted(range(-depth, depth + 1), key=abs):
        px, py = a.m11 ** (-n) * x, a.m22 ** (-n) * y
        if omega.contains(px, py):
            return n, Vec2(px, py)
    raise NotCovered(f"the orbit of ({x}, {y}) misses the tile for |n| <= {depth}")
