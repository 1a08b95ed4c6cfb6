"""CLI tests: exit codes and the JSON documents written to stdout."""
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from tilekit import main

ROOT = Path(__file__).resolve().parents[1]
SHEAR = '[[1, "sqrt(3)"], [0, 1]]'


def run(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_classify_irrational_slope(capsys):
    code, out, _ = run(capsys, "classify", "--matrix", '[[3, 0], [0, "1/2"]]', "--lattice", SHEAR)
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == 1
    assert payload["case"] == "Mixed_IrrationalSlope_Exists"
    assert payload["eigenvector"] == ["-sqrt(3)", "1"]


@pytest.mark.parametrize("args, code", [
    (["--matrix", '[[3, 0], [0, 0.5]]'], 1),
    (["--matrix", "[[1, 1], [0, 1]]"], 1),
    (["--matrix", "[[2, 0], [0, 2]]"], 0),
    (["--matrix", '[[3, 1], [0, "1/2"]]', "--wavelet"], 1),
    (["--matrix", '[[1, 1], ["1/2", 2]]', "--lattice", '[[1, "sqrt(2)"], [0, 1]]'], 3),
])
def test_classify_exit_codes(capsys, args, code):
    assert run(capsys, "classify", *args)[0] == code


@pytest.mark.parametrize("matrix", ["[[1, 2]]", "[[1, 1], [1, 1]]", '[["sqrt(2)", 0], [0, 1]]', "not json"])
def test_invalid_input_exits_2(capsys, matrix):
    code, _, err = run(capsys, "classify", "--matrix", matrix)
    assert code == 2
    assert "invalid input" in err


def test_wavelet_fixes_the_lattice(capsys):
    code, _, _ = run(capsys, "classify", "--matrix", "[[2, 0], [0, 2]]", "--wavelet", "--lattice", SHEAR)
    assert code == 2


def test_classify_writes_file(capsys, tmp_path):
    path = tmp_path / "out" / "classify.json"
    code, out, _ = run(capsys, "classify", "--matrix", "[[2, 0], [0, 2]]", "--out", str(path))
    assert code == 0
    assert out == ""
    assert json.loads(path.read_text(encoding="utf-8"))["case"] == "Expanding_Exists"


def test_continued_fraction(capsys):
    code, out, _ = run(capsys, "cf", "sqrt(3)", "--count", "6")
    payload = json.loads(out)
    assert code == 0
    assert payload["partial_quotients"] == [1, 1, 2, 1, 2, 1]
    assert payload["convergents"][-1] == "26/15"
    assert (payload["period_start"], payload["period_length"]) == (1, 2)


def test_continued_fraction_bound(capsys):
    code, out, _ = run(capsys, "cf", "sqrt(3)", "--check", "4")
    assert code == 0
    assert json.loads(out)["check"]["passed"] is True
    code, out, _ = run(capsys, "cf", "sqrt(3)", "--check", "4", "--c", "3")
    assert code == 1
    assert json.loads(out)["check"]["witness"] == "7/4"


def test_prop32_then_verify(capsys, tmp_path):
    path = tmp_path / "t2.json"
    code, _, _ = run(capsys, "construct", "prop32", "--depth", "2", "--height", "8", "--out", str(path))
    assert code == 0
    doc = json.loads(path.read_text(encoding="utf-8"))
    assert doc["construction"]["measure"] == "7/8"
    assert doc["matrix"] == [["2", "0"], ["0", "1"]]

    code, out, _ = run(capsys, "verify", "--set", str(path))
    payload = json.loads(out)
    assert code == 0
    assert payload["passed"] is True
    assert payload["translational"]["packs"] is True
    assert payload["multiplicative"]["packs"] is True


def test_verify_reports_overlap(capsys, tmp_path):
    path = tmp_path / "wide.json"
    path.write_text(json.dumps({"rects": [{"x": [0, 2], "y": [0, 1]}]}))
    code, out, _ = run(capsys, "verify", "--set", str(path), "--window", "-2,2,-2,2")
    assert code == 1
    assert json.loads(out)["translational"]["overlap_measure"] == "1"


def test_verify_rejects_overlapping_boxes(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"rects": [{"x": [0, 1], "y": [0, 1]}, {"x": ["1/2", 2], "y": [0, 1]}]}))
    assert run(capsys, "verify", "--set", str(path))[0] == 2


def test_seed_and_completion(capsys):
    code, out, _ = run(capsys, "construct", "seed", "--matrix", "[[2, 0], [0, 2]]")
    assert code == 0
    assert json.loads(out)["construction"]["measure"] == "3/4"
    code, out, _ = run(capsys, "construct", "scb", "--matrix", "[[2, 0], [0, 2]]", "--depth", "2")
    assert code == 0
    assert json.loads(out)["construction"]["translational_defect"] == "1/32"


def test_iteration_cap_exits_1(capsys):
    code, out, _ = run(capsys, "construct", "speegle", "--matrix", '[[3, 0], [0, "1/2"]]',
                       "--cap", "4", "--bands", "2", "--steps", "2")
    assert code == 1
    payload = json.loads(out)
    assert payload["iteration"]["status"] == "cap_exceeded"
    assert payload["rects"] == []


def test_render(capsys, tmp_path):
    set_path = tmp_path / "t.json"
    run(capsys, "construct", "prop32", "--depth", "2", "--out", str(set_path))
    picture = tmp_path / "t.pgm"
    code, out, _ = run(capsys, "render", "--set", str(set_path), "--out", str(picture), "--resolution", "32")
    assert code == 0
    assert picture.read_bytes().startswith(b"P5")
    assert json.loads(out)["measure"] == "7/8"


def test_pipeline(capsys, tmp_path):
    code, out, _ = run(capsys, "pipeline", "--matrix", "[[2, 0], [0, 1]]", "--depth", "3",
                       "--window", "-2,2,-2,2", "--results-dir", str(tmp_path))
    assert code == 0
    assert json.loads(out)["status"] == "verified"
    assert (tmp_path / "pipeline_report.json").exists()


def test_module_entry_point():
    env = os.environ.copy()
    env.setdefault("MPLBACKEND", "Agg")
    env["PYTHONPATH"] = os.pathsep.join(filter(None, [str(ROOT), env.get("PYTHONPATH", "")]))
    completed = subprocess.run(
        [sys.executable, str(ROOT / "tilekit.py"), "classify", "--matrix", "[[1, 1], [0, 1]]"],
        capture_output=True, text=True, env=env, cwd=str(ROOT),
    )
    assert completed.returncode == 1
    assert json.loads(completed.stdout)["case"] == "DetOne_NoTile"
