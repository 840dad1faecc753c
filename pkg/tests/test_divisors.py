from fractions import Fraction

import pytest

from src.corpus import degenerate_modification, min_function
from src.divisors import (
    balancing_defect,
    divisor,
    local_modification_report,
    ord_along,
    star_of_modification_check,
    tropical_modification,
)
from src.exceptions import FanError
from src.fan import ConewiseLinear, Fan


def test_balancing(p2, tropical_line):
    assert balancing_defect(p2) is None
    assert balancing_defect(tropical_line) is None
    corner = Fan(2, [(1, 0), (0, 1)], [[0], [1]])
    assert balancing_defect(corner) == ()


def test_order_of_vanishing_on_the_line(line):
    f = ConewiseLinear(line, [0, -1])
    assert ord_along(line, f, ()) == Fraction(1)
    assert divisor(line, f).weights == {(): 1}


def test_order_of_vanishing_does_not_depend_on_normals(square):
    f = min_function(square)
    for tau in square.faces_of_dim(1):
        assert ord_along(square, f, tau, normal_shift=2) == ord_along(square, f, tau)


def test_order_of_vanishing_errors(p2):
    f = ConewiseLinear.linear(p2, (1, 0))
    with pytest.raises(FanError) as err:
        ord_along(p2, f, (0, 1))
    assert err.value.code == "UNKNOWN_CONE"
    impure = Fan(2, [(1, 0), (0, 1), (-1, -1)], [[0, 1], [2]])
    with pytest.raises(FanError) as err:
        ord_along(impure, ConewiseLinear(impure, [0, 0, 0]), (0,))
    assert err.value.code == "NOT_PURE"


def test_linear_functions_have_no_divisor(p2):
    assert divisor(p2, ConewiseLinear.linear(p2, (2, -5))).is_empty


def test_min_function_cuts_out_the_cross(square, cross):
    div = divisor(square, min_function(square))
    assert div.support == [(0,), (1,), (2,), (3,)]
    assert div.is_reduced and div.is_effective and div.is_balanced()
    assert div.as_fan() == cross
    assert div.used_rays == [0, 1, 2, 3]
    assert (div + div).weights == {c: 2 for c in div.support}


def test_modification_of_the_line(line, tropical_line):
    mod = tropical_modification(line, ConewiseLinear(line, [0, -1]))
    assert mod.fan == tropical_line
    assert mod.up == 2
    assert mod.up_vector == (0, 1)
    assert not mod.is_degenerate
    assert mod.delta_sqcup(()) == (2,)


def test_modification_of_the_square(square, cross_modification):
    mod = tropical_modification(square, min_function(square))
    assert mod.fan == cross_modification
    assert mod.fan.rank == 3
    assert mod.fan.n_rays == 5
    assert len(mod.fan.max_cones) == 8
    assert balancing_defect(mod.fan) is None
    assert mod.to_dict()["divisor"]["reduced"]


def test_non_reduced_divisor_is_rejected(non_unimodular):
    with pytest.raises(FanError) as err:
        tropical_modification(non_unimodular, ConewiseLinear(non_unimodular, [0, 0, -6]))
    assert err.value.code == "NON_REDUCED_DIVISOR"
    assert err.value.witness == [0]
    with pytest.raises(FanError) as err:
        divisor(non_unimodular, ConewiseLinear(non_unimodular, [0, 0, -1]))
    assert err.value.code == "NON_INTEGRAL_FUNCTION"
    assert err.value.witness == [0]


def test_degenerate_modification(cross):
    values = [x - y if x + y >= 0 else 0 for x, y in cross.rays]
    mod = tropical_modification(cross, ConewiseLinear(cross, values))
    assert mod.is_degenerate
    assert mod.divisor.is_empty and mod.divisor.as_fan() is None
    assert mod.fan == degenerate_modification()
    assert mod.fan.n_rays == 4 and mod.fan.dim == 1
    with pytest.raises(FanError):
        mod.delta_sqcup(())


@pytest.mark.parametrize("fixture, values", [
    ("line", [0, -1]),
    ("square", None),
    ("square", [0, -1, 0, 0]),
])
def test_star_fans_of_modifications(request, fixture, values):
    fan = request.getfixturevalue(fixture)
    f = min_function(fan) if values is None else ConewiseLinear(fan, values)
    checks = star_of_modification_check(fan, f)
    assert checks and all(c.ok for c in checks)
    assert {c.kind for c in checks} == {"delta", "sigma"}


def test_local_modification_formula(square, line):
    rows = local_modification_report(square, min_function(square))
    assert rows and all(r["ok"] for r in rows)
    assert {r["kind"] for r in rows} == {"sigma", "delta_circ", "delta_sqcup"}
    assert all(r["ok"] for r in local_modification_report(line, ConewiseLinear(line, [0, -1]), p=1))


def test_divisor_on_non_unimodular_fan(non_unimodular):
    div = divisor(non_unimodular, ConewiseLinear(non_unimodular, [0, 0, -3]))
    assert div.weights == {(0,): 1, (1,): 1, (2,): 1}
    assert div.is_reduced
    mod = tropical_modification(non_unimodular, ConewiseLinear(non_unimodular, [0, 0, -3]))
    assert mod.fan.n_rays == 4
    assert balancing_defect(mod.fan) is None


def test_divisor_fan_keeps_only_used_rays(square):
    div = divisor(square, ConewiseLinear(square, [0, -1, 0, 0]))
    assert div.used_rays == [2, 3]
    delta = div.as_fan()
    assert delta.rays == (square.rays[2], square.rays[3])
    assert div.lift((0,)) == (2,)
    assert div.lift(()) == ()


def test_delta_star_at_the_apex_of_the_line(line):
    checks = star_of_modification_check(line, ConewiseLinear(line, [0, -1]))
    apex = [c for c in checks if c.kind == "delta"]
    assert [c.face for c in apex] == [()]
    assert apex[0].ok
