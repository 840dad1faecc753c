import json
import logging
from fractions import Fraction

import numpy as np
import pytest

from src.config_loader import DEFAULT_CONFIG, ConfigLoader
from src.utils import (
    THREADS_ENV,
    dump_json,
    dumps,
    format_duration,
    parallel_map,
    render_table,
    setup_logging,
    thread_budget,
    to_jsonable,
)


def test_thread_budget(monkeypatch):
    monkeypatch.delenv(THREADS_ENV, raising=False)
    assert thread_budget(3) == 3
    assert thread_budget(0) >= 1
    monkeypatch.setenv(THREADS_ENV, "2")
    assert thread_budget(8) == 2
    monkeypatch.setenv(THREADS_ENV, "many")
    assert thread_budget(5) == 5


@pytest.mark.parametrize("threads", [1, 4])
def test_parallel_map_keeps_order(threads):
    assert parallel_map(lambda x: x * x, range(10), threads=threads, progress=False) == [x * x for x in range(10)]
    assert parallel_map(str, [], threads=threads) == []


def test_to_jsonable():
    data = {(0, 1): Fraction(1, 2), "n": np.int64(3), "s": frozenset({2, 1}), "t": (Fraction(4), np.bool_(True))}
    assert to_jsonable(data) == {"0,1": "1/2", "n": 3, "s": [1, 2], "t": [4, True]}


def test_dumps_is_deterministic(tmp_path):
    text = dumps({"b": 1, "a": [1, 2]})
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"')
    path = tmp_path / "out" / "report.json"
    dump_json({"x": (1, 2)}, path)
    assert json.loads(path.read_text(encoding="utf-8")) == {"x": [1, 2]}


def test_dump_json_to_stdout(capsys):
    dump_json({"ok": True})
    assert json.loads(capsys.readouterr().out) == {"ok": True}


def test_render_table():
    lines = render_table({"a": {"b": 1}, "rays": [[1, 0], [0, 1]], "v": [{"x": True}]}).splitlines()
    assert lines[0] == lines[-1] == "=" * 60
    assert lines[1:-1] == ["a.b     1", "rays    [[1, 0], [0, 1]]", "v[0].x  true"]


@pytest.mark.parametrize("seconds, text", [
    (0, "0.0s"),
    (3.4, "3.4s"),
    (123.4, "2m 3.4s"),
    (3600, "1h"),
])
def test_format_duration(seconds, text):
    assert format_duration(seconds) == text


def test_setup_logging_writes_file(tmp_path):
    log_file = tmp_path / "run.log"
    setup_logging(logging.DEBUG, str(log_file))
    logging.getLogger("src.test").debug("[DEBUG] hello")
    for handler in logging.getLogger().handlers:
        handler.flush()
    assert "[DEBUG] hello" in log_file.read_text(encoding="utf-8")
    setup_logging(logging.WARNING)


def test_config_loader(config_file):
    config = ConfigLoader(str(config_file))
    assert config.validate_config()
    assert config.get("engine.coeff") == "z"
    assert config.get("engine.missing", 7) == 7
    assert config.get_engine_config()["threads"] == 1
    assert config.get_corpus_config()["examples"] is None
    config.set("engine.coeff", "q")
    config.set("extra.nested.key", 1)
    assert config.get("extra.nested.key") == 1
    out = config_file.parent / "saved.yml"
    config.save_config(str(out))
    assert ConfigLoader(str(out)).get("engine.coeff") == "q"


@pytest.mark.parametrize("key, value", [
    ("engine.coeff", "r"),
    ("engine.threads", -1),
    ("engine.threads", "two"),
    ("corpus.golden_dir", None),
])
def test_config_validation_failures(config_file, key, value):
    config = ConfigLoader(str(config_file))
    config.set(key, value)
    assert not config.validate_config()


def test_missing_config(tmp_path):
    with pytest.raises(FileNotFoundError):
        ConfigLoader(str(tmp_path / "absent.yml"))
    config = ConfigLoader(str(tmp_path / "absent.yml"), allow_missing=True)
    assert config.from_defaults
    assert config.config == DEFAULT_CONFIG
    assert config.config is not DEFAULT_CONFIG
    assert config.validate_config()
