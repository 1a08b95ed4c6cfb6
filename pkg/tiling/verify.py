"""Exact and raster checks of translational and multiplicative tiling."""
from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from models import CheckKind, OverlapWitness, RefinementPoint, VerificationMode, VerificationReport
from tiling.errors import NonDiagonal
from tiling.exactnum import ZERO, QuadScalar, as_scalar
from tiling.lattice_points import difference_box, periodize_into, points_in_open_box, translational_overlaps
from tiling.linalg2 import Lattice, Mat2
from tiling.setalg import Rect, RectSet, count_cells, count_preimage_cells

logger = logging.getLogger(__name__)

MAX_WITNESSES = 5


def axis_strip(window: Rect, eps) -> RectSet:
    """The neighbourhood ``|x| < eps`` of the vertical axis inside ``window``."""
    eps = as_scalar(eps)
    strip = RectSet([Rect(-eps, eps, window.y1, window.y2)])
    return strip & RectSet([window])


def _target(window: Rect, exclude: Optional[RectSet]) -> tuple[RectSet, QuadScalar]:
    region = RectSet([window])
    if exclude is None or exclude.is_empty:
        return region, ZERO
    removed = region & exclude
    return region - removed, removed.measure()


def check_translational(
    tile: RectSet,
    lattice: Lattice,
    window: Rect,
    exclude: Optional[RectSet] = None,
    require_cover: bool = False,
) -> VerificationReport:
    """Exact overlap and coverage of ``T + Lambda``; coverage is measured over ``window``."""
    witnesses: list[OverlapWitness] = []
    worst = ZERO
    for overlap in translational_overlaps(tile, lattice):
        measure = overlap.measure
        if measure > worst:
            worst = measure
        if len(witnesses) < MAX_WITNESSES:
            witnesses.append(OverlapWitness(
                first=overlap.first, second=overlap.second,
                shift=[str(overlap.shift.x), str(overlap.shift.y)],
                measure=str(measure), region=overlap.region.as_strings(),
            ))
    packs = not witnesses
    target, excluded = _target(window, exclude)
    covered = periodize_into(tile, lattice, window)
    defect = (target - covered).measure()
    covers = not defect
    report = VerificationReport(
        kind=CheckKind.translational,
        passed=packs and (covers or not require_cover),
        packs=packs,
        covers=covers,
        overlap_measure=str(worst),
        coverage_defect=str(defect),
        window=window.as_strings(),
        window_measure=str(window.measure()),
        excluded_measure=str(excluded),
        witnesses=witnesses,
    )
    logger.info(f"translational check: packs={packs} defect={defect}")
    return report


def check_multiplicative(
    tile: RectSet,
    a: Mat2,
    depth: int,
    window: Rect,
    exclude: Optional[RectSet] = None,
    require_cover: bool = False,
) -> VerificationReport:
    """Exact overlap of ``A^k T`` for ``|k| <= depth`` and coverage of ``window``.

    ``A^k T ∩ A^l T = A^k (T ∩ A^(l-k) T)``, so checking ``j = 1..2*depth``
    covers every pair in range.
    """
    if not a.is_diagonal():
        raise NonDiagonal(f"exact multiplicative check needs a diagonal matrix, got {a}")
    witnesses: list[OverlapWitness] = []
    worst = ZERO
    for j in range(1, 2 * depth + 1):
        overlap = tile & tile.linear_image(a.power(j))
        if overlap.is_empty:
            continue
        measure = overlap.measure()
        worst = max(worst, measure)
        if len(witnesses) < MAX_WITNESSES:
            witnesses.append(OverlapWitness(first=0, second=j, shift=[str(j)], measure=str(measure)))
    packs = not witnesses
    target, excluded = _target(window, exclude)
    images = []
    contributing = []
    for k in range(-depth, depth + 1):
        part = tile.linear_image(a.power(k)) & target
        if not part.is_empty:
            images.append(part)
            contributing.append(str(k))
    defect = (target - RectSet.union_all(images)).measure()
    covers = not defect
    logger.info(f"multiplicative check: packs={packs} defect={defect} depth={depth}")
    return VerificationReport(
        kind=CheckKind.multiplicative,
        passed=packs and (covers or not require_cover),
        packs=packs,
        covers=covers,
        overlap_measure=str(worst),
        coverage_defect=str(defect),
        window=window.as_strings(),
        window_measure=str(window.measure()),
        excluded_measure=str(excluded),
        depth=depth,
        contributing=contributing,
        witnesses=witnesses,
    )


def _raster_counts(tile: RectSet, kind: CheckKind, a: Optional[Mat2], lattice: Optional[Lattice],
                   depth: int, window: Rect, resolution: int) -> np.ndarray:
    counts = np.zeros((resolution, resolution), dtype=np.int32)
    if kind is CheckKind.translational:
        for box in tile.rects:
            for alpha in points_in_open_box(lattice, difference_box(window, box)):
                count_cells([box.translate(alpha)], window, resolution, counts)
        return counts
    for k in range(-depth, depth + 1):
        if a.is_diagonal():
            count_cells(tile.linear_image(a.power(k)), window, resolution, counts)
        else:
            count_preimage_cells(tile, a.power(-k), window, resolution, counts)
    return counts


def check_raster(
    tile: RectSet,
    kind: CheckKind,
    window: Rect,
    resolution: int,
    a: Optional[Mat2] = None,
    lattice: Optional[Lattice] = None,
    depth: int = 8,
    exclude: Optional[RectSet] = None,
    require_cover: bool = False,
) -> VerificationReport:
    """Cell-centre counts of the translates or dilates over a grid.

    Diagonal dilations and all lattice translates are rasterized from exact
    box coordinates; other dilations go through float64 preimages and are
    advisory only. The report carries the trend over coarser grids.
    """
    if kind is CheckKind.translational and lattice is None:
        raise ValueError("translational raster check needs a lattice")
    if kind is CheckKind.multiplicative and a is None:
        raise ValueError("multiplicative raster check needs a matrix")
    if resolution < 16:
        raise ValueError(f"raster resolution {resolution} is below 16")
    refinement: list[RefinementPoint] = []
    levels = sorted({r for r in (resolution // 4, resolution // 2, resolution) if r >= 2})
    overlap_cells = defect_cells = 0
    for level in levels:
        counts = _raster_counts(tile, kind, a, lattice, depth, window, level)
        keep = np.ones_like(counts, dtype=bool)
        if exclude is not None and not exclude.is_empty:
            keep &= count_cells(exclude, window, level) == 0
        total = max(int(keep.sum()), 1)
        overlap_cells = int(((counts >= 2) & keep).sum())
        defect_cells = int(((counts == 0) & keep).sum())
        refinement.append(RefinementPoint(
            resolution=level,
            overlap_fraction=overlap_cells / total,
            defect_fraction=defect_cells / total,
        ))
    final = refinement[-1]
    notes = []
    if kind is CheckKind.multiplicative and not a.is_diagonal():
        notes.append("non-diagonal dilation rasterized in float64; advisory only")
    packs = overlap_cells == 0
    covers = defect_cells == 0
    return VerificationReport(
        kind=kind,
        mode=VerificationMode.raster,
        passed=packs and (covers or not require_cover),
        packs=packs,
        covers=covers,
        overlap_fraction=final.overlap_fraction,
        defect_fraction=final.defect_fraction,
        window=window.as_strings(),
        window_measure=str(window.measure()),
        depth=depth if kind is CheckKind.multiplicative else None,
        resolution=resolution,
        refinement=refinement,
        notes=notes,
    )
