"""
Command-line front end: subcommands, exit codes and JSON output.
"""

import io
import json

import pytest

import main
from src import corpus
from src.utils import dump_json


@pytest.fixture
def run(config_file, tmp_path):
    """Run main.main with the test configuration; returns (code, report)."""

    def _run(*argv):
        out = tmp_path / "out.json"
        if out.exists():
            out.unlink()
        code = main.main(["--config", str(config_file), "-o", str(out), *argv])
        report = json.loads(out.read_text(encoding="utf-8")) if out.exists() else None
        return code, report

    return _run


@pytest.fixture
def fan_file(tmp_path):
    def _write(fan, name):
        path = tmp_path / f"{name}.json"
        dump_json(fan.to_dict(), path)
        return str(path)

    return _write


def test_homology(run, fan_file, tropical_line):
    path = fan_file(tropical_line, "L")
    code, report = run("homology", path)
    assert code == main.EXIT_OK
    assert report["space"] == "fan"
    assert report["flavor"] == "bm"
    assert report["groups"]["0,1"] == {"rank": 2, "torsion": []}
    code, report = run("homology", path, "--p", "1")
    assert code == main.EXIT_OK
    assert report["groups"] and all(k.startswith("1,") for k in report["groups"])


def test_bergman_uniform(run):
    code, report = run("bergman", "--uniform", "3", "4")
    assert code == main.EXIT_OK
    assert len(report["rays"]) == 10
    assert len(report["cones"]) == 12


def test_divisor_of_min_function(run, fan_file, tmp_path):
    path = fan_file(corpus.lambda_power(2), "square")
    function = tmp_path / "f.json"
    function.write_text(json.dumps({"values": [0, -1, 0, -1]}), encoding="utf-8")
    code, report = run("divisor", path, str(function))
    assert code == main.EXIT_OK
    assert len(report["cones"]) == 4
    assert report["weights"] == [1, 1, 1, 1]
    assert report["reduced"]


def test_deligne(run, fan_file, tropical_line):
    code, report = run("deligne", fan_file(tropical_line, "L"), "--p", "1")
    assert code == main.EXIT_OK
    assert report["holds"]
    assert [r["rank"] for r in report["rows"]] == [2, 3, 1]


def test_failed_check_exits_with_two(run, fan_file, cross):
    code, report = run("check", fan_file(cross, "cross"), "--normal")
    assert code == main.EXIT_FAILED
    assert report["verdicts"][0]["property"] == "normal"
    assert not report["verdicts"][0]["holds"]


def test_rebase(run, fan_file):
    code, report = run("rebase", fan_file(corpus.cube_fan(rebased=False), "cube"))
    assert code == main.EXIT_OK
    assert report["rank"] == 3
    assert len(report["basis"]) == 3


def test_witness_from_stdin(run, monkeypatch, tropical_line):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(corpus.TROPICAL_LINE_WITNESS)))
    code, report = run("witness")
    assert code == main.EXIT_OK
    assert report["valid"]
    assert len(report["fan"]["rays"]) == tropical_line.n_rays


def test_corpus_update_then_compare(run):
    code, report = run("corpus", "--only", "lambda", "--update")
    assert code == main.EXIT_OK
    assert report["status"] == {"lambda": "updated"}
    code, report = run("corpus", "--only", "lambda")
    assert code == main.EXIT_OK
    assert report == {"ok": True, "status": {"lambda": "ok"}}


def test_input_errors_exit_with_one(run, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text('{"rank": 2, "rays": [', encoding="utf-8")
    assert run("chow", str(broken)) == (main.EXIT_ERROR, None)
    assert run("chow", str(tmp_path / "absent.json")) == (main.EXIT_ERROR, None)


def test_invalid_config_exits_with_one(tmp_path, fan_file, line):
    config = tmp_path / "bad.yml"
    config.write_text("engine:\n  coeff: r\n", encoding="utf-8")
    assert main.main(["--config", str(config), "chow", fan_file(line, "line")]) == main.EXIT_ERROR


def test_table_format(config_file, capsys):
    code = main.main(["--config", str(config_file), "--format", "table", "bergman", "--uniform", "2", "3"])
    assert code == main.EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "=" * 60
    assert any(line.startswith("rank ") and line.endswith(" 2") for line in lines)
