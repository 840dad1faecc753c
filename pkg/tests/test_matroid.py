import pytest

from src.corpus import parallel_triangles
from src.exceptions import MatroidError
from src.matroid import Matroid, bergman_fan, parallel_connection


@pytest.mark.parametrize("ground, bases, code", [
    (3, [], "EMPTY_FAMILY"),
    (3, [[0, 3]], "INVALID_ELEMENT"),
    (4, [[0, 1], [2]], "EXCHANGE_VIOLATION"),
    (4, [[0, 1], [2, 3]], "EXCHANGE_VIOLATION"),
])
def test_from_bases_rejects(ground, bases, code):
    with pytest.raises(MatroidError) as err:
        Matroid.from_bases(ground, bases)
    assert err.value.code == code


def test_uniform():
    u24 = Matroid.uniform(2, 4)
    assert len(u24.bases) == 6
    assert u24.rank_total == 2
    assert u24.is_simple
    assert Matroid.from_bases(4, [sorted(b) for b in u24.bases]) == u24
    with pytest.raises(MatroidError) as err:
        Matroid.uniform(3, 2)
    assert err.value.code == "INVALID_ELEMENT"


def test_circuits_and_flats():
    u23 = Matroid.uniform(2, 3)
    assert u23.circuits() == [frozenset({0, 1, 2})]
    assert Matroid.from_circuits(3, [[0, 1, 2]]) == u23
    assert u23.flats() == {0: [()], 1: [(0,), (1,), (2,)], 2: [(0, 1, 2)]}
    assert u23.proper_flats() == [(0,), (1,), (2,)]
    assert u23.closure([0]) == {0}
    assert u23.closure([0, 1]) == {0, 1, 2}


def test_graphic_matroid():
    triangle = Matroid.graphic(3, [(0, 1), (1, 2), (0, 2)])
    assert triangle == Matroid.uniform(2, 3)
    doubled = Matroid.graphic(2, [(0, 1), (0, 1)])
    assert doubled.rank_total == 1
    assert not doubled.is_simple


def test_loops_and_coloops():
    m = Matroid(2, [[0]])
    assert m.loops == {1}
    assert m.coloops == {0}
    assert not m.is_simple
    with pytest.raises(MatroidError) as err:
        m.contraction(1)
    assert err.value.code == "LOOP_CONTRACTION"
    assert m.deletion(0) == Matroid(1, [[]])


def test_minors():
    u24 = Matroid.uniform(2, 4)
    assert u24.deletion(0) == Matroid.uniform(2, 3)
    assert u24.contraction(0) == Matroid.uniform(1, 3)
    with pytest.raises(MatroidError) as err:
        u24.deletion(7)
    assert err.value.code == "INVALID_ELEMENT"


def test_parallel_connection_of_triangles():
    u23 = Matroid.uniform(2, 3)
    glued = parallel_connection(u23, 0, u23, 0)
    assert glued.ground == 5
    assert glued.rank_total == 3
    assert len(glued.bases) == 8
    # two triangles sharing an edge
    k4_minus_edge = Matroid.graphic(4, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3)])
    assert glued == k4_minus_edge


def test_bergman_fan_of_uniform_matroids():
    fan = bergman_fan(Matroid.uniform(3, 4))
    assert fan.rank == 3
    assert fan.n_rays == 10
    assert len(fan.max_cones) == 12
    assert fan.dim == 2
    assert bergman_fan(Matroid.uniform(2, 2)).n_rays == 2


def test_bergman_fan_needs_simple_matroid():
    with pytest.raises(MatroidError) as err:
        bergman_fan(Matroid.graphic(2, [(0, 1), (0, 1)]))
    assert err.value.code == "NON_SIMPLE"


def test_parallel_triangles_fan():
    fan = parallel_triangles()
    assert fan.n_rays == 11
    assert len(fan.max_cones) == 14
    assert fan.dim == 2
