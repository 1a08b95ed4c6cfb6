"""Iterative packing construction that turns a multiplicative tile into a lattice packing."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from models import IterationStep, IterationTrace
from tiling.construct import address_map, find_packing_power
from tiling.errors import CapExceeded, InvariantViolation, NonDiagonal
from tiling.exactnum import QuadScalar
from tiling.lattice_points import lattice_hull, packs_by_lattice
from tiling.linalg2 import Lattice, Mat2
from tiling.setalg import Rect, RectSet
from utils.trace_tracker import IterationTracer

logger = logging.getLogger(__name__)


@dataclass
class TaggedPiece:
    """A region ``R`` of ``Omega`` placed in ``S`` as ``A^k R``."""

    k: int
    region: RectSet
    image: RectSet


@dataclass
class IterationState:
    n: int
    truncation: QuadScalar
    omega_n: RectSet
    pieces: list[TaggedPiece] = field(default_factory=list)

    @property
    def s(self) -> RectSet:
        return RectSet.union_all(p.image for p in self.pieces)

    def index_regions(self) -> dict[int, RectSet]:
        return {p.k: p.region for p in self.pieces}


class SpeegleIteration:
    """Build ``S_1, S_2, ...`` packing by ``Lambda`` with ``tau(S_n) = Omega_n``.

    ``Omega`` is a finite multiplicative tile for the diagonal ``A``. Each
    step picks a truncation ``Omega_n = Omega ∩ [-M_n, M_n)^2`` and a power
    ``m`` large enough that ``X = A^-m Omega_n`` packs; the part ``U`` of
    ``S_{n-1}`` that collides with ``X + Lambda`` is pulled back to
    ``Omega`` and re-placed inside ``X`` together with the new piece
    ``Omega_n \\ Omega_{n-1}``.

    The constants are chosen so that the per-step bounds hold as stated:
    ``mu(Omega \\ Omega_n) <= c/4^(n+1)`` and ``2 mu(A^-m Omega_n) <= mu(S_1)/4^n``.
    """

    def __init__(self, omega: RectSet, a: Mat2, lattice: Lattice, cap: int = 64,
                 tracer: Optional[IterationTracer] = None):
        if not a.is_diagonal():
            raise NonDiagonal(f"the iteration needs a diagonal dilation, got {a}")
        self.omega = omega
        self.a = a
        self.lattice = lattice
        self.cap = cap
        self.tracer = tracer
        self.c = omega.measure()
        self.det = abs(a.det())
        self.radii = sorted({abs(v) for r in omega.rects for v in (r.x1, r.x2, r.y1, r.y2) if v})
        self.history: list[RectSet] = []
        self.state: Optional[IterationState] = None
        self.trace = IterationTrace(cap=cap, measure_omega=str(self.c))

    def truncate(self, n: int, previous: Optional[QuadScalar]) -> tuple[QuadScalar, RectSet]:
        allowed = self.c / 4 ** (n + 1)
        for radius in self.radii:
            if previous is not None and radius <= previous and radius != self.radii[-1]:
                continue
            window = RectSet([Rect(-radius, radius, -radius, radius)])
            part = self.omega & window
            if (self.omega - part).measure() <= allowed:
                return radius, part
        return self.radii[-1], self.omega

    def _orbit_depth(self) -> int:
        return max(self.cap, 8) + 8

    def _record(self, step: IterationStep) -> None:
        self.trace.steps.append(step)
        if self.tracer is not None:
            self.tracer.record(step)

    def _check_addresses(self, s: RectSet, omega_n: RectSet) -> bool:
        decomposition = address_map(self.omega, self.a, s, self._orbit_depth())
        return decomposition.uncovered.is_empty and decomposition.image(self.a) == omega_n

    def first_step(self) -> IterationState:
        radius, omega_1 = self.truncate(1, None)
        m, s1 = find_packing_power(omega_1, self.a, self.lattice, self.cap, start=1)
        self.state = IterationState(1, radius, omega_1, [TaggedPiece(-m, omega_1, s1)])
        self.history.append(s1)
        self.trace.measure_s1 = str(s1.measure())
        packs = packs_by_lattice(s1, self.lattice)
        matches = self._check_addresses(s1, omega_1)
        if not (packs and matches):
            raise InvariantViolation("first iterate fails its packing or address check")
        self._record(IterationStep(
            n=1, m=m, truncation=str(radius), measure_s=str(s1.measure()), measure_u="0",
            measure_tau_u="0", measure_r=str(omega_1.measure()), measure_changed=str(s1.measure()),
            measure_x=str(omega_1.measure()), packs=packs,
            address_matches=matches, boxes=len(s1),
        ))
        logger.info(f"step 1: m={m}, M={radius}, |S_1|={s1.measure()}")
        return self.state

    def _collisions(self, x: RectSet) -> list[tuple[TaggedPiece, RectSet]]:
        hits = []
        for piece in self.state.pieces:
            found = lattice_hull(piece.image, x, self.lattice)
            hits.append((piece, RectSet(box for _, _, box in found)))
        return hits

    def step(self) -> IterationState:
        prev = self.state
        n = prev.n + 1
        radius, omega_n = self.truncate(n, prev.truncation)
        new_region = omega_n - prev.omega_n
        s_prev = self.history[-1]
        s1_measure = self.history[0].measure()
        change_bound = s1_measure / 4 ** n
        x_bound = self.c * 2 / 4 ** n
        tau_bound = self.c / 4 ** n

        m = max(-p.k for p in prev.pieces) + 1
        while self.det ** (-m) * omega_n.measure() * 2 > change_bound:
            m += 1
        chosen = None
        contraction = self.a.power(-m)
        while m <= self.cap:
            x = omega_n.linear_image(contraction)
            if packs_by_lattice(x, self.lattice):
                hits = self._collisions(x)
                tau_u = RectSet.union_all(u.linear_image(self.a.power(-p.k)) for p, u in hits)
                if tau_u.measure() <= tau_bound:
                    chosen = (m, x, hits, tau_u)
                    break
            m += 1
            contraction = self.a.power(-m)
        if chosen is None:
            raise CapExceeded(self.cap, f"step {n}: no admissible power up to cap {self.cap}")
        m, x, hits, tau_u = chosen

        pieces: list[TaggedPiece] = []
        for piece, u in hits:
            if u.is_empty:
                pieces.append(piece)
                continue
            region = piece.region - u.linear_image(self.a.power(-piece.k))
            if not region.is_empty:
                pieces.append(TaggedPiece(piece.k, region, piece.image - u))
        moved = tau_u | new_region
        pieces.append(TaggedPiece(-m, moved, moved.linear_image(contraction)))
        self.state = IterationState(n, radius, omega_n, pieces)
        s_n = self.state.s
        self.history.append(s_n)

        old_index = prev.index_regions()
        changed = RectSet.union_all(
            p.region - old_index.get(p.k, RectSet.empty()) for p in pieces
        )
        changed_measure = (s_n ^ s_prev).measure()
        packs = packs_by_lattice(s_n, self.lattice)
        matches = self._check_addresses(s_n, omega_n)
        step = IterationStep(
            n=n, m=m, truncation=str(radius), measure_s=str(s_n.measure()),
            measure_u=str(RectSet.union_all(u for _, u in hits).measure()),
            measure_tau_u=str(tau_u.measure()), measure_r=str(new_region.measure()),
            measure_changed=str(changed_measure), change_bound=str(change_bound),
            measure_x=str(changed.measure()), x_bound=str(x_bound), packs=packs,
            address_matches=matches, boxes=len(s_n),
        )
        self._record(step)
        logger.info(f"step {n}: m={m}, M={radius}, |S_n|={s_n.measure()}, boxes={len(s_n)}")
        if not (packs and matches and changed_measure <= change_bound and changed.measure() <= x_bound):
            raise InvariantViolation(f"step {n} breaks a per-step bound: {step.model_dump()}")
        return self.state

    def run(self, steps: int) -> IterationTrace:
        if steps < 1:
            raise ValueError("steps must be at least 1")
        try:
            self.first_step()
            for _ in range(steps - 1):
                self.step()
        except CapExceeded as exc:
            self.trace.status = "cap_exceeded"
            self.trace.message = str(exc)
            logger.warning(f"⚠️ {exc}")
            return self.trace
        s1_measure = self.history[0].measure()
        self.trace.chain_bound_ok = all(
            (self.history[j] ^ self.history[i]).measure() < s1_measure * 2 / 4 ** (i + 1)
            for i in range(len(self.history))
            for j in range(i + 1, len(self.history))
        )
        self.trace.half_measure_ok = all(s.measure() * 2 > s1_measure for s in self.history)
        return self.trace


def speegle_iterate(omega: RectSet, a: Mat2, lattice: Lattice, steps: int, cap: int = 64,
                    tracer: Optional[IterationTracer] = None) -> tuple[IterationTrace, Optional[RectSet]]:
    """Run the iteration; returns the trace and the last iterate (``None`` when the cap was hit)."""
    iteration = SpeegleIteration(omega, a, lattice, cap=cap, tracer=tracer)
    trace = iteration.run(steps)
    last = iteration.history[-1] if trace.status == "ok" else None
    return trace, last
