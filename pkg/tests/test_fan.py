import pytest

from src.corpus import bergman_uniform, cube_fan, min_function, two_planes
from src.divisors import divisor
from src.exceptions import FanError
from src.fan import (
    ConewiseLinear,
    Fan,
    blow_down,
    blow_up,
    connected_through_codim_one,
    facet_components,
    fans_isomorphic,
    is_saturated,
    is_saturated_at,
    is_unimodular,
    k_skeleton,
    point_fan,
    product,
    star_fan,
    validate_fan,
)


def raw(rays, cones, rank=2, **extra):
    return {"rank": rank, "rays": rays, "cones": cones, **extra}


@pytest.mark.parametrize("data, code", [
    (raw([[2, 0]], [[0]]), "NON_PRIMITIVE_RAY"),
    (raw([[0, 0]], [[0]]), "NON_PRIMITIVE_RAY"),
    (raw([[1, 0, 0]], [[0]]), "RANK_MISMATCH"),
    (raw([[1, 0]], [[0, 1]]), "BAD_RAY_INDEX"),
    (raw([[1, 0], [0, 1]], [[0, 1], [1, 0]]), "DUPLICATE_CONE"),
    (raw([[1, 0], [-1, 0]], [[0, 1]]), "DEPENDENT_RAYS"),
    (raw([[1, 0], [0, 1], [1, 1]], [[0, 1], [0, 2]]), "CONE_OVERLAP"),
    (raw([[1, 0], [1, 0]], [[0], [1]]), "DUPLICATE_RAY"),
])
def test_validate_fan_rejects(data, code):
    with pytest.raises(FanError) as err:
        validate_fan(data)
    assert err.value.code == code


def test_duplicate_ray_points_at_both_copies():
    with pytest.raises(FanError) as err:
        validate_fan(raw([[1, 0], [0, 1], [2, 0]], [[0, 1], [1, 2]]), marked=True)
    assert err.value.code == "DUPLICATE_RAY"
    assert err.value.witness == [0, 2]


def test_overlap_has_a_witness_point():
    with pytest.raises(FanError) as err:
        validate_fan(raw([[1, 0], [0, 1], [1, 1]], [[0, 1], [0, 2]]))
    x, y = err.value.witness
    assert x > 0 and y > 0


def test_overlap_check_can_be_skipped():
    fan = validate_fan(raw([[1, 0], [0, 1], [1, 1]], [[0, 1], [0, 2]]), check_overlap=False)
    assert len(fan.max_cones) == 2


def test_marked_rays_keep_their_vectors():
    fan = validate_fan(raw([[1, 0], [0, 3]], [[0], [1]]), marked=True)
    assert fan.rays == ((1, 0), (0, 1))
    assert fan.marks == ((1, 0), (0, 3))
    assert fan.to_dict()["marks"] == [[1, 0], [0, 3]]


def test_unused_rays_become_cones():
    fan = validate_fan(raw([[1, 0], [0, 1], [-1, -1]], [[0, 1]]))
    assert fan.max_cones == ((2,), (0, 1))
    assert not fan.is_pure


def test_face_poset(p2):
    assert len(p2.faces) == 7
    assert p2.dim == 2 and p2.is_pure
    assert p2.faces_of_dim(1) == [(0,), (1,), (2,)]
    assert p2.adjacent_rays((0,)) == [1, 2]
    with pytest.raises(FanError) as err:
        p2.check_face([0, 1, 2])
    assert err.value.code == "UNKNOWN_CONE"


def test_equality_ignores_ray_order(p2):
    shuffled = Fan(2, [p2.rays[2], p2.rays[0], p2.rays[1]], [[0, 1], [1, 2], [0, 2]])
    assert shuffled == p2


def test_star_fan(p2, line):
    star = star_fan(p2, (0,))
    assert star.fan.rank == 1
    assert fans_isomorphic(star.fan, line)
    assert star.lift_face(star.face_of((0, 1))) == (0, 1)
    assert star_fan(p2, (0, 1)).fan.dim == 0


def test_product_and_skeleton(line, p2, tropical_line):
    square = product(line, line)
    assert square.rays == ((1, 0), (-1, 0), (0, 1), (0, -1))
    assert len(square.max_cones) == 4
    assert k_skeleton(p2, 1) == tropical_line
    assert k_skeleton(p2, 0) == point_fan(2)
    assert k_skeleton(p2, 5) is p2


def test_blow_up_and_down(p2):
    blown = blow_up(p2, [0, 1])
    assert blown.n_rays == 4
    assert blown.rays[3] == (1, 1)
    assert len(blown.max_cones) == 4
    assert blow_down(blown, 3) == p2
    assert blow_up(p2, [0]) is p2


def test_blow_up_errors(p2):
    with pytest.raises(FanError) as err:
        blow_up(p2, [0, 1], (1, -1))
    assert err.value.code == "NOT_IN_RELINT"
    with pytest.raises(FanError) as err:
        blow_down(p2, 0)
    assert err.value.code == "NOT_A_BLOWUP"


def test_unimodularity_and_saturation(non_unimodular):
    assert not is_unimodular(non_unimodular)
    assert all(non_unimodular.cone_index(c) == 3 for c in non_unimodular.max_cones)
    assert not is_saturated_at(non_unimodular, ())
    assert is_saturated_at(non_unimodular, (0,))
    assert not is_saturated_at(cube_fan(rebased=False), ())
    assert is_saturated_at(cube_fan(), ())
    assert not is_saturated(cube_fan(rebased=False))


def test_facet_components(p2):
    assert len(facet_components(two_planes())) == 2
    assert connected_through_codim_one(p2)
    with pytest.raises(FanError) as err:
        facet_components(validate_fan(raw([[1, 0], [0, 1], [-1, -1]], [[0, 1]])))
    assert err.value.code == "NOT_PURE"


def test_fans_isomorphic(p2, tropical_line, cross):
    assert fans_isomorphic(bergman_uniform(2, 3), tropical_line)
    assert not fans_isomorphic(tropical_line, cross)
    sheared = Fan(2, [(x + y, y) for x, y in p2.rays], p2.max_cones)
    assert fans_isomorphic(sheared, p2)
    assert not fans_isomorphic(p2, tropical_line)


def test_conewise_linear(p2, square):
    f = ConewiseLinear.linear(p2, (1, 2))
    assert f.values == (1, 2, -3)
    assert f.is_linear()
    assert f.value_at((2, 2), (0, 1)) == 6
    assert not min_function(square).is_linear()
    assert (f - f).values == (0, 0, 0)
    assert (2 * f).values == (2, 4, -6)
    with pytest.raises(FanError) as err:
        ConewiseLinear(p2, [0, 0])
    assert err.value.code == "RANK_MISMATCH"


def test_integral_form_and_star_function(square):
    f = min_function(square)
    ell = f.integral_form_on((1, 3))
    assert sum(a * b for a, b in zip(ell, (-1, 0))) == -1
    assert sum(a * b for a, b in zip(ell, (0, -1))) == -1
    star = star_fan(square, (0,))
    local = f.on_star(star)
    assert divisor(star.fan, local).weights == {(): 1}
