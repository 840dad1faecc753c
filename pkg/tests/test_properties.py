import pytest

from src.corpus import degenerate_modification, lambda_power, two_planes, u33_skeleton
from src.exceptions import FanError, PreconditionError
from src.fan import Fan, product
from src.properties import (
    CHECKS,
    Verdict,
    deligne_check,
    irreducible_components,
    is_div_faithful,
    is_irreducible,
    is_locally_irreducible,
    is_normal,
    is_principal,
    is_smooth,
    is_tropical,
    partial_deligne_check,
    run_checks,
    verifies_pd,
)


def test_verdict():
    v = Verdict("normal", False, (0, 1), {"reason": "x"})
    assert not v
    assert v.to_dict() == {"property": "normal", "holds": False, "witness": [0, 1], "details": {"reason": "x"}}
    assert Verdict("pd", True).to_dict() == {"property": "pd", "holds": True}


def test_tropical_line_is_smooth(tropical_line):
    assert is_tropical(tropical_line)
    assert is_normal(tropical_line)
    assert is_irreducible(tropical_line)
    assert verifies_pd(tropical_line)
    assert is_smooth(tropical_line, threads=1)


def test_unbalanced_fan_is_not_tropical():
    corner = Fan(2, [(1, 0), (0, 1)], [[0], [1]])
    verdict = is_tropical(corner)
    assert not verdict and verdict.witness == ()
    assert not verifies_pd(corner)


def test_cross_is_tropical_but_not_normal(cross):
    assert is_tropical(cross)
    assert not is_normal(cross)


def test_irreducible_means_generated_by_the_fundamental_cycle(cross):
    verdict = is_irreducible(cross)
    assert not verdict
    assert verdict.details["rank"] == 2
    corner = Fan(2, [(1, 0), (0, 1)], [[0], [1]])
    verdict = is_irreducible(corner)
    assert not verdict and verdict.details["reason"] == "not tropical"


def test_cube_fails_poincare_duality(cube):
    verdict = verifies_pd(cube)
    assert not verdict
    assert verdict.witness == [1, 1]


def test_cross_modification_verdicts(cross_modification):
    assert is_tropical(cross_modification)
    assert is_irreducible(cross_modification)
    assert not is_locally_irreducible(cross_modification)
    assert not verifies_pd(cross_modification)
    assert not is_smooth(cross_modification, threads=1)
    principal = is_principal(cross_modification, threads=1)
    assert principal.details["at_zero"]
    faithful = is_div_faithful(cross_modification, threads=1)
    assert faithful.details["at_zero"]
    assert not faithful


def test_degenerate_modification_verifies_pd():
    assert verifies_pd(degenerate_modification())


def test_product_of_cross_and_line_is_not_principal_at_zero(cross, line):
    verdict = is_principal(product(cross, line), threads=1)
    assert not verdict.details["at_zero"]
    assert not verdict


@pytest.mark.slow
def test_two_planes_times_line(line):
    fan = product(two_planes(), line)
    assert is_normal(fan)
    assert is_div_faithful(fan, threads=1)
    assert not is_irreducible(fan)
    assert not is_principal(fan, threads=1)


def test_irreducible_components():
    assert len(irreducible_components(two_planes())) == 2
    with pytest.raises(FanError) as err:
        irreducible_components(u33_skeleton())
    assert err.value.code == "NOT_NORMAL"


def test_deligne_sequence_of_the_line(tropical_line):
    report = deligne_check(tropical_line, 1)
    assert [r["rank"] for r in report.rows] == [2, 3, 1]
    assert all(r["exact"] for r in report.rows)
    assert report.holds and report.composition_zero
    assert report.verdict()
    assert deligne_check(tropical_line, 0).holds


def test_deligne_sequence_of_the_square():
    square = lambda_power(2)
    for p in range(3):
        assert deligne_check(square, p).holds


def test_deligne_preconditions(non_unimodular, cross_modification, tropical_line):
    with pytest.raises(PreconditionError):
        deligne_check(non_unimodular, 1)
    with pytest.raises(PreconditionError):
        deligne_check(cross_modification, 1)
    with pytest.raises(ValueError):
        deligne_check(tropical_line, 2)


def test_partial_deligne_sequence(tropical_line, non_unimodular):
    report = partial_deligne_check(tropical_line, 0)
    assert report.details["cokernel_matches"]
    assert report.holds
    with pytest.raises(FanError) as err:
        partial_deligne_check(non_unimodular, 0)
    assert err.value.code == "NOT_UNIMODULAR"


def test_run_checks(tropical_line):
    verdicts = run_checks(tropical_line, ["tropical", "unimodular", "principal"], threads=1)
    assert [v.name for v in verdicts] == ["tropical", "unimodular", "principal"]
    assert all(verdicts)
    assert set(CHECKS) >= {"tropical", "normal", "pd", "smooth", "div_faithful"}
    with pytest.raises(ValueError):
        run_checks(tropical_line, ["bogus"])
