import pytest

from src.chow import (
    ChowRing,
    StarChowRings,
    chow_group,
    chow_pd_check,
    chow_report,
    cl_map,
    cycle_class,
    cycle_class_relations_check,
    degree,
    div_faithful_report,
    hodge_iso_check,
    hodge_ring_check,
    keel_check,
    minkowski_weights,
    principality_report,
    relations_pair_to_zero,
)
from src.corpus import cube_fan, lambda_power, marked_curve, projective_fan
from src.exceptions import FanError, PreconditionError
from src.lattice import FinAbGroup

Z = FinAbGroup.free


def test_projective_plane_groups(p2):
    ring = ChowRing(p2)
    assert [ring.group(k).group for k in range(3)] == [Z(1), Z(1), Z(1)]
    assert minkowski_weights(p2, 1).rank == 1
    assert minkowski_weights(p2, 0).rank == 1


def test_projective_plane_products(p2):
    ring = ChowRing(p2)
    h = ring.ray(0)
    assert ring.ray(1) == h and ring.ray(2) == h
    assert degree(p2, ring.ray(0) * ring.ray(1)) == 1
    assert degree(p2, h * h) == 1
    assert (h * h) == ring.element((1, 2))
    assert ring.mul(ring.unit(), h) == h
    assert (2 * h - h) == h
    assert [abs(x) for x in ring.pairing_matrix(1).flat] == [1]


def test_mixing_rings_is_an_error(p2):
    with pytest.raises(FanError) as err:
        ChowRing(p2).ray(0) + ChowRing(p2).ray(0)
    assert err.value.code == "RANK_MISMATCH"


def test_marked_curve_has_torsion():
    fan = marked_curve()
    assert chow_group(fan, 1).group == FinAbGroup(1, (3,))
    ring = ChowRing(fan)
    with pytest.raises(PreconditionError):
        ring.mul(ring.ray(0), ring.unit())


def test_products_need_unimodular_fans(non_unimodular):
    assert chow_group(non_unimodular, 1).group == FinAbGroup(1, (3,))
    ring = ChowRing(non_unimodular)
    with pytest.raises(FanError) as err:
        ring.mul(ring.ray(0), ring.ray(1))
    assert err.value.code == "NOT_UNIMODULAR"


def test_poincare_duality_of_chow_rings(p2, cube):
    assert chow_pd_check(p2).holds
    assert chow_pd_check(lambda_power(2), "q").holds
    assert not chow_pd_check(cube, "z").holds
    assert chow_pd_check(cube, "q").holds
    with pytest.raises(ValueError):
        chow_pd_check(p2, "r")


def test_cl_map(tropical_line, cube):
    assert cl_map(tropical_line).bijective
    cube_cl = cl_map(cube)
    assert cube_cl.integral
    assert not cube_cl.surjective
    assert cube_cl.cokernel == FinAbGroup(0, (2,))


def test_cl_map_over_rationals():
    unrebased = cl_map(cube_fan(rebased=False))
    assert not unrebased.integral
    assert unrebased.surjective


def test_local_reports(cross_modification):
    principal = principality_report(cross_modification, threads=1)
    assert principal.at(())
    faithful = div_faithful_report(cross_modification, threads=1)
    assert faithful.at(())
    assert not faithful.holds
    assert faithful.failures
    assert faithful.to_dict()["property"] == "div_faithful"


def test_relations_and_cycle_classes(p2):
    for k in range(3):
        assert relations_pair_to_zero(p2, k)
    assert cycle_class_relations_check(p2, 1)
    cls = cycle_class(p2, (0,))
    assert cls.is_cycle and (cls.p, cls.q) == (1, 1)


def test_hodge_isomorphism(p2, square):
    assert hodge_iso_check(p2).holds
    assert hodge_iso_check(square).holds
    assert hodge_ring_check(p2, 1, 1)


def test_non_unimodular_torsion_breaks_vanishing(non_unimodular):
    report = hodge_iso_check(non_unimodular)
    assert not report.unimodular
    assert report.vanishing[(1, 2)] == FinAbGroup(0, (3,))
    assert not report.holds


def test_keel_decomposition(p2, non_unimodular):
    assert keel_check(p2, (0, 1)).holds
    assert keel_check(projective_fan(3), (0, 1)).holds
    with pytest.raises(FanError) as err:
        keel_check(non_unimodular, (0, 1))
    assert err.value.code == "NOT_UNIMODULAR"


def test_gysin_maps(p2):
    stars = StarChowRings(p2)
    assert stars.dim((0,)) == 1
    assert stars.pushforward_agrees((0, 1), (0,), 0)


def test_chow_report(p2, cube):
    report = chow_report(p2)
    assert report["groups"] == {str(k): Z(1).to_dict() for k in range(3)}
    assert report["pairing"]["holds"]
    assert chow_report(cube, "q")["pairing"]["holds"]
