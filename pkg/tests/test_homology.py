import pytest

from src.corpus import lambda_power
from src.exceptions import FanError
from src.fan import point_fan
from src.homology import (
    CellComplex,
    CupProduct,
    cap_with_fundamental,
    homology,
    hypercube_cohomology,
    relative_homology,
)
from src.lattice import FinAbGroup

Z = FinAbGroup.free


def test_tropical_line_borel_moore(tropical_line):
    h = homology(tropical_line, "bm", threads=1)
    assert h.nonzero() == {(0, 1): Z(2), (1, 1): Z(1)}
    assert str(h) == "bm {(0,1): Z^2, (1,1): Z}"


def test_unknown_flavor(tropical_line):
    with pytest.raises(ValueError):
        homology(tropical_line, "weird")


def test_cube_compact_support(cube):
    h = homology(cube, "c-cohom", threads=1)
    assert h.nonzero() == {
        (0, 2): Z(5),
        (1, 2): FinAbGroup(3, (2,)),
        (2, 1): Z(2),
        (2, 2): Z(1),
    }
    assert homology(cube, "bm", threads=1).get(1, 1) == FinAbGroup(0, (2,))


@pytest.mark.slow
def test_cube_compactification(cube):
    h = homology(CellComplex.compactification(cube), "cohom", threads=1)
    assert h.nonzero() == {(0, 0): Z(1), (1, 1): Z(5), (2, 1): Z(2), (2, 2): Z(1)}


def test_non_unimodular_torsion(non_unimodular):
    h = homology(CellComplex.compactification(non_unimodular), "cohom", threads=1)
    assert h.get(1, 2) == FinAbGroup(0, (3,))


def test_projective_plane_compactification(p2):
    h = homology(CellComplex.compactification(p2), "cohom", threads=1)
    assert h.nonzero() == {(0, 0): Z(1), (1, 1): Z(1), (2, 2): Z(1)}
    assert hypercube_cohomology(p2) == h


def test_boundaries_square_to_zero(p2, cube):
    for fan in (p2, cube):
        space = CellComplex.compactification(fan)
        for p in range(fan.dim + 1):
            assert space.chain_complex(p).squares_to_zero()
            assert space.chain_complex(p, compact_only=True).squares_to_zero()


def test_sedentarity_filter(p2):
    finite = CellComplex.compactification(p2, sedentarity=[()])
    assert finite.faces == CellComplex.of_fan(p2).faces
    bounded = CellComplex.compactification(p2, sedentarity=lambda sed: len(sed) <= 1)
    assert all(len(f.sed) <= 1 for f in bounded.faces)


def test_cross_modification_homology(cross_modification):
    h = homology(cross_modification, "bm", threads=1)
    assert h.get(0, 2) == Z(4)


def test_modification_of_line_matches_relative_homology(line, tropical_line):
    relative = relative_homology(line, point_fan(1), "bm")
    assert relative == homology(tropical_line, "bm", threads=1)


@pytest.mark.slow
def test_modification_of_square_matches_relative_homology(cross, cross_modification):
    relative = relative_homology(lambda_power(2), cross, "bm")
    assert relative == homology(cross_modification, "bm", threads=1)


def test_relative_homology_needs_shared_rays(p2, cross):
    with pytest.raises(FanError) as err:
        relative_homology(p2, cross, "bm")
    assert err.value.code == "NOT_A_SUBCOMPLEX"


def test_cap_with_fundamental_class(tropical_line):
    for p in range(2):
        cap = cap_with_fundamental(tropical_line, p)
        assert cap.injective and cap.surjective


def test_cup_product_on_projective_plane(p2):
    cup = CupProduct(p2)
    (a,) = cup.cocycle_basis(1, 1)
    assert cup.cohomology_class(cup.cup(cup.unit(), a)) == cup.cohomology_class(a)
    square = cup.cup(a, a)
    assert (square.p, square.q) == (2, 2)
    assert [abs(x) for x in cup.cohomology_class(square)] == [1]
