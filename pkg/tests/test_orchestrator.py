import json
from fractions import Fraction

from models import RunConfig, TilingCase
from orchestrator import PIPELINE_EXIT_CODES, TilingOrchestrator
from tiling.linalg2 import Lattice, Mat2

SMALL = RunConfig(depth=3, cap=16, window=["-2", "2", "-2", "2"])


def test_det_one_stops_after_classification():
    report = TilingOrchestrator().run(Mat2.of(1, 1, 0, 1), run_config=SMALL)
    assert report.status == "no_tile"
    assert report.classification.case is TilingCase.DetOne_NoTile
    assert report.construction is None
    assert PIPELINE_EXIT_CODES[report.status] == 1


def test_rational_slope_has_no_tile():
    report = TilingOrchestrator().run(Mat2.diag(3, Fraction(1, 2)), run_config=SMALL)
    assert report.status == "no_tile"


def test_unsupported_radicals():
    lattice = Lattice(Mat2.of(1, "sqrt(2)", 0, 1))
    report = TilingOrchestrator().run(Mat2.of(1, 1, Fraction(1, 2), 2), lattice, SMALL)
    assert report.status == "unsupported"
    assert PIPELINE_EXIT_CODES[report.status] == 3


def test_complex_pair_reports_the_verdict_only():
    report = TilingOrchestrator().run(Mat2.of(1, -1, 1, 1), run_config=SMALL)
    assert report.status == "verdict_only"
    assert report.classification.exists is True
    assert report.frame is None
    assert PIPELINE_EXIT_CODES[report.status] == 0


def test_unimodular_eigenvalue_uses_the_explicit_tile():
    report = TilingOrchestrator().run(Mat2.diag(2, 1), run_config=SMALL)
    assert report.status == "verified"
    assert report.construction.kind == "prop32"
    assert report.construction.measure == "15/16"
    assert report.translational.packs and report.multiplicative.packs
    assert report.diagonal == [["2", "0"], ["0", "1"]]


def test_unimodular_eigenvalue_without_vertical_lattice_vector_iterates():
    lattice = Lattice(Mat2.of(1, "sqrt(3)", 0, 1))
    run_config = RunConfig(depth=3, cap=16, window=["-2", "2", "-2", "2"], bands=2, steps=2)
    report = TilingOrchestrator().run(Mat2.diag(2, 1), lattice, run_config)
    assert report.status == "verified"
    assert report.construction.kind == "speegle"
    assert len(report.iteration.steps) == 2
    assert report.multiplicative.excluded_measure != "0"


def test_iteration_at_the_cap_fails_construction():
    lattice = Lattice(Mat2.of(1, "sqrt(3)", 0, 1))
    run_config = RunConfig(depth=3, cap=1, window=["-2", "2", "-2", "2"], bands=2, steps=2)
    report = TilingOrchestrator().run(Mat2.diag(2, 1), lattice, run_config)
    assert report.status == "construction_failed"
    assert report.iteration.status == "cap_exceeded"
    assert PIPELINE_EXIT_CODES[report.status] == 1
    assert PIPELINE_EXIT_CODES[report.status] != PIPELINE_EXIT_CODES["unsupported"]


def test_expanding_dilation_is_completed(tmp_path):
    orchestrator = TilingOrchestrator(str(tmp_path))
    report = orchestrator.run(Mat2.diag(2, 2), Lattice.standard(), SMALL)
    assert report.status == "verified"
    assert report.construction.kind == "scb"
    assert report.construction.translational_defect == "1/128"
    saved = json.loads((tmp_path / "pipeline_report.json").read_text(encoding="utf-8"))
    assert saved["schema"] == 1
    assert saved["status"] == "verified"
