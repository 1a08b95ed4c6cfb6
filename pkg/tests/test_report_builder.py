import json
from fractions import Fraction

from models import ClassificationReport, SpectrumSummary, TilingCase
from tiling.construct import prop32_wavelet_set
from tiling.linalg2 import Mat2
from tiling.setalg import Rect, RectSet
from utils.report_builder import SetRenderer, prop32_report, render_set, set_document, to_json, write_json
from utils.scalar_loader import parse_rectset


def _report() -> ClassificationReport:
    return ClassificationReport(
        matrix=[["2", "0"], ["0", "2"]],
        normalized_matrix=[["2", "0"], ["0", "2"]],
        spectrum=SpectrumSummary(kind="RealRepeated", trace="4", det="4", discriminant="0"),
        case=TilingCase.Expanding_Exists,
    )


def test_json_is_versioned_and_stable():
    text = to_json(_report())
    assert text.endswith("\n")
    payload = json.loads(text)
    assert payload["schema"] == 1
    assert payload["case"] == "Expanding_Exists"
    assert to_json(_report()) == text


def test_write_json_creates_folders(tmp_path):
    path = tmp_path / "deep" / "report.json"
    text = write_json({"passed": True}, str(path))
    assert path.read_text(encoding="utf-8") == text


def test_prop32_report_defect():
    tile = prop32_wavelet_set(2, 1, 8)
    report = prop32_report(tile, Fraction(2), Fraction(1), Fraction(0), 8, Fraction(8))
    assert report.kind == "prop32"
    assert report.measure == "511/512"
    assert report.translational_defect == "1/32"
    assert report.params["height"] == "8"


def test_set_document_reads_back():
    tile = prop32_wavelet_set(2, 1, 2)
    doc = set_document(tile, prop32_report(tile, 2, 1, 0, 2), matrix=[["2", "0"], ["0", "1"]])
    assert list(doc) == ["construction", "matrix", "rects"]
    assert parse_rectset(json.loads(json.dumps(doc))) == tile


def test_pgm_picture(tmp_path):
    path = tmp_path / "tile.pgm"
    render_set(RectSet.box(0, 1, 0, 1), str(path), window=Rect.of(0, 2, 0, 2), resolution=16)
    data = path.read_bytes()
    assert data.startswith(b"P5")
    assert len(data) > 16 * 16


def test_svg_picture(tmp_path):
    path = tmp_path / "tile.svg"
    renderer = SetRenderer().add(prop32_wavelet_set(2, 1, 2), label="T_2")
    renderer.add(prop32_wavelet_set(2, 1, 2).linear_image(Mat2.diag(2, 1)), color="#d62728", label="A T_2")
    renderer.to_svg(str(path), title="two levels")
    assert "<svg" in path.read_text(encoding="utf-8")
