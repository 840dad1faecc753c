import pytest

from src.corpus import (
    LINE,
    P3_SKELETON_WITNESS,
    POINT,
    PROJECTIVE_PLANE_WITNESS,
    TROPICAL_LINE_WITNESS,
    shellable_not_bergman,
)
from src.exceptions import InputFormatError, WitnessError
from src.fan import fans_isomorphic
from src.shelling import CLASSES, check_convexity_certificate, line_fan, replay_shell_witness


def tropmod(of, values, divisor=None):
    node = {"op": "tropmod", "of": of, "values": values}
    if divisor is not None:
        node["divisor"] = divisor
    return node


def test_tropical_line_witness(tropical_line):
    replay = replay_shell_witness(TROPICAL_LINE_WITNESS)
    assert replay.fan == tropical_line
    assert [s["path"] for s in replay.steps] == ["$.of", "$.divisor", "$"]
    assert replay.to_dict()["valid"]


def test_tropical_line_witness_with_property_checks(tropical_line):
    replay = replay_shell_witness(TROPICAL_LINE_WITNESS, verify_properties=True)
    assert replay.fan == tropical_line


def test_projective_witnesses(p2, p3_skeleton):
    assert fans_isomorphic(replay_shell_witness(PROJECTIVE_PLANE_WITNESS).fan, p2)
    assert fans_isomorphic(replay_shell_witness(PROJECTIVE_PLANE_WITNESS, "unimodular").fan, p2)
    assert fans_isomorphic(replay_shell_witness(P3_SKELETON_WITNESS).fan, p3_skeleton)


@pytest.mark.slow
def test_shellable_fan_outside_bergman_class():
    fan = shellable_not_bergman()
    assert fan.rank == 4 and fan.dim == 2


@pytest.mark.parametrize("witness, path", [
    (tropmod(LINE, [0, -1], divisor=LINE), "$.divisor"),
    (tropmod(LINE, [0, -1]), "$.divisor"),
    (tropmod(LINE, [0, 0], divisor=POINT), "$.divisor"),
    ({"op": "base", "fan": "plane"}, "$"),
    ({"op": "blowup", "of": LINE, "cone": [0, 1], "star": POINT}, "$"),
    ({"op": "product", "left": LINE, "right": {"op": "base", "fan": "circle"}}, "$.right"),
])
def test_step_violations(witness, path):
    with pytest.raises(WitnessError) as err:
        replay_shell_witness(witness)
    assert err.value.code == "STEP_VIOLATION"
    assert err.value.witness == path


def test_linear_modification_needs_no_divisor():
    fan = replay_shell_witness(tropmod(LINE, [0, 0])).fan
    assert fan.rays == ((1, 0), (-1, 0))


def test_malformed_nodes():
    with pytest.raises(InputFormatError):
        replay_shell_witness({"op": "twist", "of": LINE})
    with pytest.raises(InputFormatError) as err:
        replay_shell_witness({"op": "tropmod", "values": [0, -1]})
    assert err.value.witness == "$"
    assert err.value.code == "MALFORMED_INPUT"
    with pytest.raises(InputFormatError) as err:
        replay_shell_witness({"op": "product", "left": LINE, "right": {"fan": "line"}})
    assert err.value.code == "MALFORMED_INPUT"
    assert err.value.witness == "$.right"
    with pytest.raises(ValueError):
        replay_shell_witness(LINE, klass="toric")


def test_quasi_projective_class_needs_certificates():
    assert "quasi-projective" in CLASSES
    with pytest.raises(WitnessError) as err:
        replay_shell_witness(POINT, klass="quasi-projective")
    assert err.value.witness == "$"
    certified = {**LINE, "convex": {"values": [1, 1]}}
    assert replay_shell_witness(certified, klass="quasi-projective").fan == line_fan()
    with pytest.raises(WitnessError):
        replay_shell_witness({**LINE, "convex": {"values": [0, 0]}}, klass="quasi-projective")


def test_convexity_certificate(line, p2):
    assert check_convexity_certificate(line, {"values": [1, 1]}) is None
    assert check_convexity_certificate(line, {"values": [0, 0]}) == (0,)
    assert check_convexity_certificate(p2, {"values": [1, 1, 1]}) is None
    with pytest.raises(InputFormatError):
        check_convexity_certificate(line, {"values": [1]})
