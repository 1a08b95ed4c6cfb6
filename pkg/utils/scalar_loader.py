"""Utility functions for loading matrices, lattices, sets and windows from JSON."""
import os
import json
from typing import Any, List, Optional, Tuple

from tiling.errors import InvalidInput, ScalarParseError, Singular
from tiling.exactnum import ZERO, QuadScalar, as_scalar
from tiling.linalg2 import Lattice, Mat2, Vec2
from tiling.setalg import Rect, RectSet


def load_json_argument(value: str) -> Any:
    """
    Read a JSON document given inline or as a path to a file.

    Args:
        value: JSON text such as ``[[1,1],[0,1]]`` or a path to a ``.json`` file

    Returns:
        The decoded JSON value
    """
    text = value
    if os.path.exists(value):
        with open(value, "r", encoding="utf-8") as f:
            text = f.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidInput(f"not valid JSON and not an existing file: {value!r} ({e})") from e


def _scalar(value: Any, what: str) -> QuadScalar:
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise InvalidInput(f"{what}: expected a number or scalar string, got {value!r}")
    try:
        return as_scalar(value)
    except ScalarParseError as e:
        raise InvalidInput(f"{what}: {e}") from e


def parse_matrix(data: Any, what: str = "matrix") -> Mat2:
    """Accept ``[[a,b],[c,d]]`` or ``{"matrix": [[...]]}`` / ``{"basis": [[...]]}``."""
    if isinstance(data, dict):
        data = data.get("matrix", data.get("basis"))
    if not (isinstance(data, list) and len(data) == 2
            and all(isinstance(row, list) and len(row) == 2 for row in data)):
        raise InvalidInput(f"{what}: expected a 2x2 array of scalars, got {data!r}")
    return Mat2(*(_scalar(v, what) for row in data for v in row))


def load_matrix(value: str) -> Mat2:
    return parse_matrix(load_json_argument(value))


def load_rational_matrix(value: str) -> Mat2:
    m = load_matrix(value)
    if not m.is_rational():
        raise InvalidInput(f"dilation matrices must have rational entries, got {m}")
    if not m.det():
        raise InvalidInput(f"dilation matrix {m} is singular")
    return m


def parse_lattice(data: Any) -> Lattice:
    """Lattice ``P Z^2`` from decoded basis data; ``Z^2`` for ``None``."""
    if data is None:
        return Lattice.standard()
    try:
        return Lattice(parse_matrix(data, "lattice"))
    except Singular as e:
        raise InvalidInput(str(e)) from e


def load_lattice(value: Optional[str]) -> Lattice:
    return parse_lattice(None if value is None else load_json_argument(value))


def parse_rectset(data: Any) -> RectSet:
    """``{"rects": [{"x": [a, b], "y": [c, d]}, ...]}``; empty boxes are rejected."""
    if not isinstance(data, dict) or not isinstance(data.get("rects"), list):
        raise InvalidInput("set: expected an object with a 'rects' list")
    rects: List[Rect] = []
    for i, item in enumerate(data["rects"]):
        try:
            (x1, x2), (y1, y2) = item["x"], item["y"]
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidInput(f"set: box {i} needs 'x' and 'y' pairs") from e
        box = Rect(_scalar(x1, f"box {i}"), _scalar(x2, f"box {i}"),
                   _scalar(y1, f"box {i}"), _scalar(y2, f"box {i}"))
        if box.is_empty:
            raise InvalidInput(f"set: box {i} is empty: {box}")
        rects.append(box)
    s = RectSet(rects)
    total = sum((r.measure() for r in rects), ZERO)
    if total != s.measure():
        raise InvalidInput("set: boxes overlap; a set is a disjoint union of boxes")
    return s


def load_rectset(value: str) -> RectSet:
    return parse_rectset(load_json_argument(value))


def parse_window(value: str) -> Rect:
    """``"x0,x1,y0,y1"`` or a JSON list of four scalars."""
    text = value.strip()
    try:
        parts = json.loads(text) if text.startswith("[") else [p.strip() for p in text.split(",")]
    except json.JSONDecodeError as e:
        raise InvalidInput(f"window: {e}") from e
    if len(parts) != 4:
        raise InvalidInput(f"window needs four values x0,x1,y0,y1, got {value!r}")
    window = Rect(*(_scalar(p, "window") for p in parts))
    if window.is_empty:
        raise InvalidInput(f"window {value!r} is empty")
    return window


def load_gram_indices(value: str) -> List[Tuple[int, Vec2]]:
    """``[[n, [a1, a2]], ...]`` or ``{"indices": [...]}``."""
    data = load_json_argument(value)
    if isinstance(data, dict):
        data = data.get("indices")
    if not isinstance(data, list) or not data:
        raise InvalidInput("gram indices: expected a non-empty list of [n, [a1, a2]]")
    out = []
    for entry in data:
        try:
            n, (a1, a2) = entry
        except (TypeError, ValueError) as e:
            raise InvalidInput(f"gram indices: bad entry {entry!r}") from e
        if not isinstance(n, int) or isinstance(n, bool):
            raise InvalidInput(f"gram indices: level must be an integer, got {n!r}")
        out.append((n, Vec2(_scalar(a1, "gram index"), _scalar(a2, "gram index"))))
    return out


def rectset_to_json(s: RectSet) -> dict:
    return {"rects": [{"x": [str(r.x1), str(r.x2)], "y": [str(r.y1), str(r.y2)]} for r in s.rects]}


def matrix_to_json(m: Mat2) -> List[List[str]]:
    return [[str(e) for e in row] for row in m.rows()]
