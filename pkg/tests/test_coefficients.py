import pytest

from src.coefficients import CoefficientSystem, CompFace, comp_faces, fan_faces, orientation

ORIGIN = CompFace((), ())


def test_compactification_face_counts(p2, cube):
    assert len(comp_faces(p2)) == 1 + 3 * 2 + 3 * 4
    # Σ 2^|σ| over the cones: 1 + 8·2 + 12·4
    assert len(comp_faces(cube)) == 65
    assert comp_faces(p2, [()]) == fan_faces(p2)


def test_facets_and_signs():
    face = CompFace((), (0, 1))
    assert face.dim == 2
    assert face.facets() == [
        (CompFace((), (1,)), 1, "same"),
        (CompFace((0,), (0, 1)), -1, "raise"),
        (CompFace((), (0,)), -1, "same"),
        (CompFace((1,), (0, 1)), 1, "raise"),
    ]
    assert CompFace((0,), (0, 1)).free_rays() == (1,)
    assert str(CompFace((0,), (0, 1))) == "([0],[0, 1])"


def test_coefficient_ranks(p2, tropical_line, cross_modification):
    coeff = CoefficientSystem(p2)
    assert [coeff.rank(ORIGIN, p) for p in range(3)] == [1, 2, 1]
    assert coeff.rank((0,), 1) == 2
    assert coeff.rank(CompFace((0,), (0,)), 1) == 1
    assert coeff.rank(CompFace((0, 1), (0, 1)), 1) == 0
    line = CoefficientSystem(tropical_line)
    assert [line.rank(ORIGIN, p) for p in range(3)] == [1, 2, 0]
    assert CoefficientSystem(cross_modification).rank(ORIGIN, 2) == 3


def test_cached_lattices_are_shared(p2):
    coeff = CoefficientSystem(p2)
    assert coeff.coef_lattice((0,), 1) is coeff.coef_lattice(CompFace((), (0,)), 1)


def test_canonical_multivectors(p2):
    coeff = CoefficientSystem(p2)
    assert coeff.nu((0,)) == (1, 0)
    assert coeff.nu((2,)) == (-1, -1)
    assert coeff.nu(ORIGIN) == (1,)
    assert coeff.normal_vector((), 2) == (-1, -1)
    assert coeff.normal_vector((0,), 1) in ((1,), (-1,))


def test_incidence_signs(p2):
    coeff = CoefficientSystem(p2)
    assert coeff.sign(CompFace((), (1,)), CompFace((), (0, 1))) == 1
    with pytest.raises(ValueError):
        coeff.sign(CompFace((), (2,)), CompFace((), (0, 1)))
    signs = orientation(p2, coeff).signs
    assert signs[(CompFace((0,), (0, 1)), CompFace((), (0, 1)))] == -1
