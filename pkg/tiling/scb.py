"""Schroeder-Bernstein completion of a seed into a simultaneous tile."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from tiling.construct import address_map
from tiling.errors import CapExceeded, InvariantViolation, NonDiagonal, NotCovered, SeedNotMultTile, SeedNotPacking
from tiling.exactnum import ZERO, QuadScalar
from tiling.lattice_points import RectangularDomain, packs_by_lattice, rectangular_domain, reduce_mod_lattice
from tiling.linalg2 import Lattice, Mat2, Vec2
from tiling.setalg import Rect, RectSet

logger = logging.getLogger(__name__)

ORIGIN = Vec2(ZERO, ZERO)


@dataclass(frozen=True)
class PlacedPiece:
    """``piece = A^m source`` and ``piece + alpha`` lies in the fundamental domain."""

    m: int
    alpha: Vec2
    source: Rect
    piece: Rect


@dataclass
class ScbResult:
    tile: RectSet
    depth: int
    dilate: int
    fundamental: RectSet
    exchange: RectSet
    frontier: RectSet
    translational_defect: QuadScalar
    layer_measures: list[QuadScalar] = field(default_factory=list)
    pieces: list[PlacedPiece] = field(default_factory=list)


class ScbCompletion:
    """Turn a seed ``S`` into a set tiling by both ``A`` and ``Lambda``.

    ``S`` must pack by the lattice and tile by ``A``. A fundamental domain
    ``F`` of the lattice is carved out of a scalar dilate ``nS`` (which still
    tiles by ``A``). Reduction mod the lattice gives an injection
    ``phi: S -> F`` and the address map of ``S`` gives ``psi: F -> S``; the
    classical back-and-forth argument glues them into a bijection, and each
    point of ``S`` is moved along its own orbit. The exchange region is
    built layer by layer: ``E_0 = S \\ psi(F)``, ``E_{k+1} = psi(phi(E_k))``.
    """

    def __init__(self, seed: RectSet, a: Mat2, lattice: Lattice, cap: int = 64, mult_depth: int = 8):
        if not a.is_diagonal():
            raise NonDiagonal(f"completion needs a diagonal dilation, got {a}")
        self.seed = seed
        self.a = a
        self.lattice = lattice
        self.cap = cap
        self.mult_depth = mult_depth
        self.domain: RectangularDomain = rectangular_domain(lattice)
        self.dilate: Optional[int] = None
        self.chart: list[tuple[Vec2, RectSet]] = []
        self.fundamental = RectSet.empty()
        self.psi_parts: dict[int, RectSet] = {}

    def check_seed(self) -> None:
        if not packs_by_lattice(self.seed, self.lattice):
            raise SeedNotPacking("seed overlaps one of its lattice translates")
        for j in range(1, self.mult_depth + 1):
            if not (self.seed & self.seed.linear_image(self.a.power(j))).is_empty:
                raise SeedNotMultTile(f"seed overlaps its image under A^{j}")

    def find_fundamental_domain(self) -> int:
        """Smallest ``n`` such that ``nS`` contains a fundamental domain; sets ``self.fundamental``."""
        target = self.domain.box.measure()
        for n in range(1, self.cap + 1):
            covered = RectSet.empty()
            chart: list[tuple[Vec2, RectSet]] = []
            for alpha, part in reduce_mod_lattice(self.seed.scale(n, n), self.domain):
                fresh = part.translate(alpha) - covered
                if fresh.is_empty:
                    continue
                covered = covered | fresh
                chart.append((alpha, fresh.translate(-alpha)))
            if covered.measure() == target:
                self.dilate = n
                self.chart = chart
                self.fundamental = RectSet.union_all(p for _, p in chart)
                logger.info(f"fundamental domain found inside {n}*S with {len(self.fundamental)} boxes")
                return n
        raise CapExceeded(self.cap, f"no dilate n*S with n <= {self.cap} contains a fundamental domain")

    def _build_psi(self) -> None:
        try:
            decomposition = address_map(self.seed, self.a, self.fundamental, self.mult_depth, strict=True)
        except NotCovered as exc:
            raise SeedNotMultTile(f"fundamental domain leaves the orbit of the seed: {exc}") from exc
        self.psi_parts = decomposition.parts

    def phi(self, x: RectSet) -> list[tuple[Vec2, RectSet]]:
        """Pieces ``(gamma, P)`` of ``x`` with ``P + gamma ⊂ F``."""
        out: list[tuple[Vec2, RectSet]] = []
        for beta, part in reduce_mod_lattice(x, self.domain):
            image = part.translate(beta)
            for alpha_f, f_part in self.chart:
                overlap = image & f_part.translate(alpha_f)
                if not overlap.is_empty:
                    out.append((beta - alpha_f, overlap.translate(-beta)))
        return out

    def psi(self, y: RectSet) -> RectSet:
        return RectSet.union_all(
            (y & part).linear_image(self.a.power(k)) for k, part in self.psi_parts.items()
        )

    def complete(self, depth: int) -> ScbResult:
        if depth < 0:
            raise ValueError("depth must be non-negative")
        self.check_seed()
        if self.dilate is None:
            self.find_fundamental_domain()
            self._build_psi()

        layers: list[RectSet] = [self.seed - self.psi(self.fundamental)]
        moves: list[list[tuple[Vec2, RectSet]]] = []
        # the frontier layers E_K and E_{K+1} stay undecided
        while len(layers) < depth + 2:
            moved = self.phi(layers[-1])
            moves.append(moved)
            layers.append(self.psi(RectSet.union_all(p.translate(g) for g, p in moved)))

        pieces: list[PlacedPiece] = []
        for k in range(depth):
            for gamma, part in moves[k]:
                for box in part.rects:
                    pieces.append(PlacedPiece(0, gamma, box, box))
        remainder = self.seed - RectSet.union_all(layers)
        for k, f_part in self.psi_parts.items():
            inside = remainder & f_part.linear_image(self.a.power(k))
            back = self.a.power(-k)
            for box in inside.rects:
                image = RectSet([box]).linear_image(back).rects[0]
                pieces.append(PlacedPiece(-k, ORIGIN, box, image))

        tile = RectSet(p.piece for p in pieces)
        covolume = self.lattice.covolume
        defect = covolume - tile.measure()
        if defect != layers[depth].measure():
            raise InvariantViolation(f"defect {defect} differs from frontier measure {layers[depth].measure()}")
        exchange = RectSet.union_all(layers[:depth])
        logger.info(f"completion depth={depth}: measure {tile.measure()}, defect {defect}")
        return ScbResult(
            tile=tile,
            depth=depth,
            dilate=self.dilate,
            fundamental=self.fundamental,
            exchange=exchange,
            frontier=layers[depth] | layers[depth + 1],
            translational_defect=defect,
            layer_measures=[layer.measure() for layer in layers],
            pieces=pieces,
        )


def scb_complete(seed: RectSet, a: Mat2, lattice: Lattice, depth: int, cap: int = 64, mult_depth: int = 8) -> ScbResult:
    return ScbCompletion(seed, a, lattice, cap=cap, mult_depth=mult_depth).complete(depth)
