import random
from fractions import Fraction
from itertools import combinations
from math import gcd

import numpy as np
import pytest
from sympy import Matrix

from src.lattice import (
    FinAbGroup,
    SublatticeBasis,
    compound_matrix,
    determinant,
    exterior_power_basis,
    hermite_normal_form,
    invariant_factors,
    left_kernel,
    matmul,
    primitive,
    quotient_coordinates,
    quotient_group,
    rank,
    rational_solve,
    saturate,
    smith_normal_form,
    subquotient,
    wedge,
    wedge_product,
)


def determinantal_invariants(rows):
    """Invariant factors from gcds of minors, computed with sympy."""
    m = Matrix(rows)
    out, prev = [], 1
    for k in range(1, min(m.shape) + 1):
        g = 0
        for r in combinations(range(m.rows), k):
            for c in combinations(range(m.cols), k):
                g = gcd(g, int(m.extract(list(r), list(c)).det()))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def test_smith_normal_form_example():
    a = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    D, U, V = smith_normal_form(a)
    assert [D[i, i] for i in range(3)] == [2, 6, 12]
    assert (matmul(matmul(U, np.array(a, dtype=object)), V) == D).all()
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1


def test_invariant_factors_match_determinantal_divisors():
    rng = random.Random(7)
    for _ in range(40):
        m, n = rng.randint(1, 3), rng.randint(1, 4)
        rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(m)]
        assert invariant_factors(rows) == determinantal_invariants(rows)


def test_rank_matches_sympy():
    rng = random.Random(11)
    for _ in range(30):
        rows = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(3)]
        assert rank(rows) == Matrix(rows).rank()


def test_hermite_normal_form():
    H, U = hermite_normal_form([[2, 4], [1, 2]])
    assert H.tolist() == [[1, 2], [0, 0]]
    assert abs(determinant(U)) == 1


def test_determinant():
    assert determinant(np.array([[0, 1], [1, 0]], dtype=object)) == -1


def test_rational_solve():
    assert rational_solve([[1, 0], [1, 1]], [2, 3]) == [Fraction(-1), Fraction(3)]
    assert rational_solve([[1, 1], [2, 2]], [1, 0]) is None


def test_left_kernel():
    assert left_kernel([[1, 1], [1, 1]]).vectors() == [(1, -1)]


def test_saturate_and_primitive():
    lattice = SublatticeBasis.from_generators(2, [[1, 1], [1, -1]])
    assert lattice.index_in_saturation() == 2
    assert saturate(lattice).vectors() == [(1, 0), (0, 1)]
    assert primitive((2, 4)) == (1, 2)
    with pytest.raises(ValueError):
        primitive((0, 0))


def test_sublattice_coordinates():
    lattice = SublatticeBasis.from_generators(3, [[2, 0, 0], [0, 1, 1]])
    assert lattice.contains((4, 3, 3))
    assert not lattice.contains((1, 0, 0))
    assert lattice.in_span((1, 0, 0))
    with pytest.raises(ValueError):
        lattice.coordinates((1, 0, 0))


def test_quotient_coordinates_kill_the_lattice():
    lattice = SublatticeBasis.from_generators(3, [[1, 1, 0]])
    P, R = quotient_coordinates(lattice)
    assert P.shape == (3, 2)
    assert not any(matmul(lattice.basis, P).flat)
    assert matmul(R, P).tolist() == [[1, 0], [0, 1]]


def test_quotient_group():
    assert str(quotient_group(3, [[1, -1, 0], [0, 3, -3]])) == "Z + Z/3"
    assert quotient_group(2) == FinAbGroup.free(2)


def test_subquotient():
    group = subquotient(SublatticeBasis.full(2), [[2, 0]])
    assert group == FinAbGroup(1, (2,))
    assert str(group) == "Z + Z/2"
    assert group.presentation.is_zero((2, 0))
    assert not group.presentation.is_zero((1, 0))


def test_fin_ab_group():
    assert FinAbGroup.from_orders([2, 3]).torsion == (6,)
    assert FinAbGroup.from_orders([0, 1, 4]) == FinAbGroup(1, (4,))
    assert (FinAbGroup(1, (2,)) + FinAbGroup(0, (2,))) == FinAbGroup(1, (2, 2))
    assert FinAbGroup(2, (3,)).rationalize() == FinAbGroup.free(2)
    assert FinAbGroup.from_dict(FinAbGroup(1, (2, 4)).to_dict()) == FinAbGroup(1, (2, 4))
    assert str(FinAbGroup(0, ())) == "0"
    with pytest.raises(ValueError):
        FinAbGroup(0, (2, 3))
    with pytest.raises(ValueError):
        FinAbGroup(0, (1,))


def test_wedge():
    assert wedge([(1, 0, 0), (0, 1, 0)], 3) == (1, 0, 0)
    assert wedge([(0, 1, 0), (1, 0, 0)], 3) == (-1, 0, 0)
    assert wedge([], 3) == (1,)
    e1, e2 = (1, 0, 0), (0, 1, 0)
    assert wedge_product(e1, 1, e2, 1, 3) == wedge([e1, e2], 3)
    assert wedge_product(e2, 1, e1, 1, 3) == tuple(-x for x in wedge([e1, e2], 3))


def test_compound_matrix_is_multiplicative():
    rng = random.Random(3)
    for _ in range(10):
        a = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
        b = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(3)]
        ab = matmul(compound_matrix(a, 2), compound_matrix(b, 2))
        prod = matmul(np.array(a, dtype=object), np.array(b, dtype=object))
        assert (compound_matrix(prod, 2) == ab).all()


def test_exterior_power_basis():
    lattice = SublatticeBasis.from_generators(3, [[1, 0, 0], [0, 1, 1]])
    assert exterior_power_basis(lattice, 2).vectors() == [(1, 1, 0)]
    assert exterior_power_basis(lattice, 0).rank == 1
    assert exterior_power_basis(lattice, 3).rank == 0
