"""
Example corpus: constructors, reports and golden-file comparison.

Golden files in tests/golden pin the facts of each report they list;
``python main.py corpus --update`` rewrites them with full reports.
"""

import json
from pathlib import Path

import pytest

from src.corpus import (
    EXAMPLES,
    CorpusRunner,
    bergman_uniform,
    build_report,
    golden_mismatches,
    lambda_power,
    marked_curve,
    min_function,
    run_corpus,
    tropical_line,
)
from src.utils import dumps

GOLDEN_DIR = Path(__file__).parent / "golden"


def test_constructors():
    assert lambda_power(2).rays == ((1, 0), (-1, 0), (0, 1), (0, -1))
    assert min_function(lambda_power(2)).values == (0, -1, 0, -1)
    assert bergman_uniform(2, 3) == tropical_line()
    assert bergman_uniform(2, 4).n_rays == 4
    assert marked_curve().marks[2] == (0, 3)


def test_select(tmp_path):
    runner = CorpusRunner(tmp_path)
    assert len(runner.select()) == len(EXAMPLES)
    assert [e.name for e in runner.select(["cross", "lambda"])] == ["cross", "lambda"]
    assert runner.golden_path("cross") == tmp_path / "cross.json"
    with pytest.raises(ValueError):
        runner.select(["no_such_fan"])


def test_build_report_of_the_line():
    report = build_report(EXAMPLES["lambda"], threads=1)
    assert report["name"] == "lambda"
    assert report["checks"]["pd"] and report["checks"]["smooth"]
    assert report["homology"]["bm"]["flavor"] == "bm"
    assert report["chow"]["pairing"]["holds"]


def test_marked_curve_report_keeps_the_torsion():
    report = build_report(EXAMPLES["marked_curve"], threads=1)
    assert report["chow"]["groups"]["1"] == {"rank": 1, "torsion": [3]}
    assert report["chow"]["pairing"] is None


def test_update_then_compare(tmp_path):
    names = ["lambda", "cross"]
    assert run_corpus(tmp_path, names, update=True, threads=1).status == {"lambda": "updated", "cross": "updated"}
    result = run_corpus(tmp_path, names, threads=1)
    assert result.ok and result.failures() == []
    (tmp_path / "cross.json").write_text('{"checks": {"normal": true}}\n', encoding="utf-8")
    (tmp_path / "lambda.json").unlink()
    result = run_corpus(tmp_path, names, threads=1)
    assert result.status == {"lambda": "missing", "cross": "diff"}
    assert not result.ok
    assert result.to_dict()["ok"] is False


def test_golden_mismatches_pin_only_listed_keys():
    report = {"name": "cross", "checks": {"normal": False, "tropical": True}, "fan": {"rays": [[1, 0]]}}
    assert golden_mismatches({"checks": {"normal": False}}, report) == []
    assert golden_mismatches({"checks": {"normal": True}}, report) == ["$.checks.normal"]
    assert golden_mismatches({"fan": {"rays": []}}, report) == ["$.fan.rays"]
    assert golden_mismatches({"chow": {}}, report) == ["$.chow"]


def test_every_example_has_a_golden_file():
    assert sorted(p.stem for p in GOLDEN_DIR.glob("*.json")) == sorted(EXAMPLES)


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_golden_reports(name):
    path = GOLDEN_DIR / f"{name}.json"
    assert path.exists(), f"no golden file for {name}"
    golden = json.loads(path.read_text(encoding="utf-8"))
    assert golden["name"] == name
    report = json.loads(dumps(build_report(EXAMPLES[name], threads=1)))
    assert golden_mismatches(golden, report) == []
