import json

import pytest

from src.corpus import cube_fan
from src.exceptions import FanError, InputFormatError, MatroidError
from src.fan import Fan
from src.fan_io import (
    load_json,
    loads,
    parse_fan,
    parse_function,
    parse_matroid,
    parse_witness,
    read_fan,
    rebase,
    rebase_report,
    write_fan,
)
from src.lattice import determinant
from src.matroid import Matroid


def test_syntax_errors_carry_line_and_column():
    with pytest.raises(InputFormatError) as err:
        loads('{\n  "rank": 2,\n  "rays": [1, 2,,]\n}')
    assert err.value.code == "MALFORMED_INPUT"
    assert err.value.witness["line"] == 3
    assert err.value.witness["column"] > 1


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_json(tmp_path / "nope.json")


@pytest.mark.parametrize("data, witness", [
    ([1, 2], "$"),
    ({"rays": [], "cones": []}, "$.rank"),
    ({"rank": 2, "rays": [[1, "a"]], "cones": [[0]]}, "$.rays[0]"),
    ({"rank": 2, "rays": [[1, 0]], "cones": [0]}, "$.cones[0]"),
    ({"rank": "2", "rays": [], "cones": []}, "$.rank"),
    ({"rank": -1, "rays": [], "cones": []}, "$.rank"),
])
def test_parse_fan_rejects_malformed_input(data, witness):
    with pytest.raises(InputFormatError) as err:
        parse_fan(data)
    assert err.value.witness == witness


def test_parse_fan_checks_the_axioms():
    with pytest.raises(FanError) as err:
        parse_fan({"rank": 1, "rays": [[2]], "cones": [[0]]})
    assert err.value.code == "NON_PRIMITIVE_RAY"
    marked = parse_fan({"rank": 1, "rays": [[2]], "cones": [[0]]}, marked=True)
    assert marked.rays == ((1,),) and marked.marks == ((2,),)


def test_parse_fan_round_trips_through_to_dict(p2):
    assert parse_fan(p2.to_dict()) == p2


def test_parse_matroid_forms():
    u23 = Matroid.uniform(2, 3)
    assert parse_matroid({"uniform": [2, 3]}) == u23
    assert parse_matroid({"ground": 3, "bases": [[0, 1], [0, 2], [1, 2]]}) == u23
    assert parse_matroid({"ground": 3, "circuits": [[0, 1, 2]]}) == u23
    assert parse_matroid({"graphic": {"vertices": 3, "edges": [[0, 1], [1, 2], [0, 2]]}}) == u23
    with pytest.raises(InputFormatError):
        parse_matroid({"ground": 3})
    with pytest.raises(MatroidError):
        parse_matroid({"ground": 2, "bases": [[0], [0, 1]]})


def test_parse_function(p2):
    assert parse_function([0, 0, 1], p2).values == (0, 0, 1)
    assert parse_function({"values": [1, 2, 3]}, p2).values == (1, 2, 3)
    with pytest.raises(InputFormatError):
        parse_function([0, 1], p2)
    with pytest.raises(InputFormatError):
        parse_function({"values": [0, 1.5, 2]}, p2)


def test_parse_witness():
    node = {"op": "base", "fan": "line"}
    assert parse_witness({"witness": node}) is node
    with pytest.raises(InputFormatError):
        parse_witness({"fan": "line"})


def test_read_and_write_fan(tmp_path, p2):
    path = tmp_path / "p2.json"
    write_fan(p2, path)
    assert read_fan(path) == p2
    wrapped = tmp_path / "wrapped.json"
    wrapped.write_text(json.dumps({"fan": p2.to_dict(), "note": "x"}), encoding="utf-8")
    assert read_fan(wrapped) == p2


def test_rebase_cube():
    fan, basis = rebase(cube_fan(rebased=False))
    assert fan.rank == 3
    assert abs(determinant(basis)) == 4
    assert fan == cube_fan()
    report = rebase_report(cube_fan(rebased=False))
    assert len(report["basis"]) == 3
    assert report["rays"] == [list(r) for r in fan.rays]


def test_rebase_of_a_degenerate_span():
    fan, basis = rebase(Fan(2, [(1, 1), (-1, -1)], [[0], [1]]))
    assert fan.rank == 1
    assert basis.tolist() == [[1, 1]]
    assert set(fan.rays) == {(1,), (-1,)}
