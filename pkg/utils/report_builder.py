from __future__ import annotations

import os
import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np
from PIL import Image
from pydantic import BaseModel

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import Rectangle
    MATPLOTLIB_AVAILABLE = True
except Exception:
    MATPLOTLIB_AVAILABLE = False

from models import ConstructionReport, IterationTrace, Provenance
from tiling.construct import prop32_defect
from tiling.linalg2 import Mat2
from tiling.scb import ScbResult
from tiling.setalg import Rect, RasterSet, RectSet
from utils.scalar_loader import matrix_to_json, rectset_to_json

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def _payload(report: Any) -> Dict[str, Any]:
    if isinstance(report, BaseModel):
        return report.model_dump(mode="json")
    return dict(report)


def to_json(report: Any) -> str:
    """Versioned, deterministic JSON text for a report model or plain dict."""
    body = {"schema": SCHEMA_VERSION}
    body.update(_payload(report))
    return json.dumps(body, indent=2, ensure_ascii=False) + "\n"


def write_json(report: Any, path: Optional[str] = None) -> str:
    """Write the report to ``path`` (creating folders) and return the JSON text."""
    text = to_json(report)
    if path:
        folder = os.path.dirname(path)
        if folder:
            os.makedirs(folder, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
        logger.info(f"Report written to {path}")
    return text


@dataclass
class RenderLayer:
    """One set drawn in one colour."""

    s: RectSet
    color: str = "#1f77b4"
    label: str = ""
    alpha: float = 0.6


@dataclass
class SetRenderer:
    """SVG and PGM pictures of box unions; for inspection only."""

    window: Optional[Rect] = None
    layers: list = field(default_factory=list)

    def add(self, s: RectSet, color: str = "#1f77b4", label: str = "", alpha: float = 0.6) -> "SetRenderer":
        self.layers.append(RenderLayer(s, color, label, alpha))
        return self

    def _extent(self) -> Rect:
        if self.window is not None:
            return self.window
        boxes = [layer.s.bounding_box() for layer in self.layers if not layer.s.is_empty]
        if not boxes:
            return Rect.of(-1, 1, -1, 1)
        return Rect(min(b.x1 for b in boxes), max(b.x2 for b in boxes),
                    min(b.y1 for b in boxes), max(b.y2 for b in boxes))

    def to_svg(self, path: str, title: str = "") -> str:
        if not MATPLOTLIB_AVAILABLE:
            raise RuntimeError("matplotlib is required for SVG rendering")
        extent = self._extent()
        matplotlib.rcParams["svg.hashsalt"] = "tilekit"
        fig, ax = plt.subplots(figsize=(6, 6))
        for layer in self.layers:
            for i, r in enumerate(layer.s.rects):
                ax.add_patch(Rectangle(
                    (float(r.x1), float(r.y1)), float(r.width), float(r.height),
                    facecolor=layer.color, edgecolor="none", alpha=layer.alpha,
                    label=layer.label if i == 0 and layer.label else None,
                ))
        ax.set_xlim(float(extent.x1), float(extent.x2))
        ax.set_ylim(float(extent.y1), float(extent.y2))
        ax.set_aspect("equal")
        if title:
            ax.set_title(title)
        if any(layer.label for layer in self.layers):
            ax.legend(loc="upper right", fontsize="small")
        folder = os.path.dirname(path)
        if folder:
            os.makedirs(folder, exist_ok=True)
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
        logger.info(f"SVG written to {path}")
        return path

    def to_pgm(self, path: str, resolution: int = 256) -> str:
        """Grey-level picture: each layer adds to the brightness of the cells it covers."""
        extent = self._extent()
        levels = np.zeros((resolution, resolution), dtype=np.int32)
        for layer in self.layers:
            levels += RasterSet.from_rectset(layer.s, extent, resolution).mask
        scale = 255 // max(len(self.layers), 1)
        pixels = np.ascontiguousarray(np.clip(levels * scale, 0, 255).astype(np.uint8)[::-1])
        folder = os.path.dirname(path)
        if folder:
            os.makedirs(folder, exist_ok=True)
        Image.fromarray(pixels).save(path, format="PPM")
        logger.info(f"PGM written to {path}")
        return path


def render_set(s: RectSet, path: str, window: Optional[Rect] = None, title: str = "",
               resolution: int = 256) -> str:
    """Render by file extension: ``.svg`` through matplotlib, ``.pgm`` through pillow."""
    renderer = SetRenderer(window).add(s)
    if path.lower().endswith(".pgm"):
        return renderer.to_pgm(path, resolution)
    return renderer.to_svg(path, title)


# -- construction reports -----------------------------------------------------

U_N_NOTE = (
    "U_n = [-a_n, -a_{n+1}) ∪ [a_{n+1}, a_n): the symmetric pieces partition [-1/2, 1/2) "
    "and satisfy U_{n+1} = lambda1^-1 U_n; the nested form [-a_n, a_{n+1}) would not"
)


def prop32_report(tile: RectSet, lambda1, lambda2, shear, depth: int, height=None) -> ConstructionReport:
    params = {"lambda1": str(lambda1), "lambda2": str(lambda2), "t": str(shear), "depth": str(depth)}
    report = ConstructionReport(kind="prop32", measure=str(tile.measure()), boxes=len(tile),
                                params=params, notes=[U_N_NOTE])
    if height is not None:
        report.params["height"] = str(height)
        report.translational_defect = str(prop32_defect(lambda1, depth, height))
        report.notes.append("translational defect is over [-1/2, 1/2) x [-height, height)")
    return report


def seed_report(seed: RectSet, a: Mat2, power: Optional[int] = None, bands: Optional[int] = None) -> ConstructionReport:
    params = {"matrix": json.dumps(matrix_to_json(a))}
    notes = []
    if power is not None:
        params["power"] = str(power)
        notes.append(f"A^-{power} applied so that the seed packs by the lattice")
    if bands is not None:
        params["bands"] = str(bands)
        notes.append("finite truncation of the band tile; coverage misses the axis x = 0 and the dropped bands")
    return ConstructionReport(kind="seed", measure=str(seed.measure()), boxes=len(seed), params=params, notes=notes)


def scb_report(result: ScbResult, a: Mat2) -> ConstructionReport:
    return ConstructionReport(
        kind="scb",
        measure=str(result.tile.measure()),
        boxes=len(result.tile),
        params={
            "matrix": json.dumps(matrix_to_json(a)),
            "depth": str(result.depth),
            "dilate": str(result.dilate),
            "fundamental_boxes": str(len(result.fundamental)),
        },
        translational_defect=str(result.translational_defect),
        provenance=[
            Provenance(m=p.m, alpha=[str(p.alpha.x), str(p.alpha.y)],
                       source=p.source.as_strings(), piece=p.piece.as_strings())
            for p in result.pieces
        ],
        notes=[
            f"layer measures {[str(m) for m in result.layer_measures]}",
            "the frontier layers stay undecided; the defect equals the measure of the last exchanged layer",
        ],
    )


def speegle_report(last: Optional[RectSet], trace: IterationTrace, a: Mat2, bands: int) -> ConstructionReport:
    s = last if last is not None else RectSet.empty()
    notes = [f"iteration status {trace.status}"]
    if trace.message:
        notes.append(trace.message)
    return ConstructionReport(
        kind="speegle",
        measure=str(s.measure()),
        boxes=len(s),
        params={
            "matrix": json.dumps(matrix_to_json(a)),
            "steps": str(len(trace.steps)),
            "cap": str(trace.cap),
            "bands": str(bands),
        },
        notes=notes,
    )


def set_document(s: RectSet, report: Optional[BaseModel] = None, **extra: Any) -> Dict[str, Any]:
    """A set file that ``tilekit verify --set`` reads back, with the report attached."""
    doc: Dict[str, Any] = {}
    if report is not None:
        doc["construction"] = _payload(report)
    for key, value in extra.items():
        doc[key] = _payload(value) if isinstance(value, BaseModel) else value
    doc.update(rectset_to_json(s))
    return doc
