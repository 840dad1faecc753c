"""
Lattice Algebra
===============

Exact integer linear algebra used by every other module: Hermite and
Smith normal forms, finitely generated abelian groups, sublattices of Z^n,
saturation, quotient coordinates and exterior powers.

Integer matrices are numpy arrays with ``dtype=object`` holding Python
ints, so entries never overflow and never become floats. Vectors act on
matrices from the left (row convention) throughout the package.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


# ----------------------------------------------------------------------
# matrix helpers
# ----------------------------------------------------------------------

def zeros(rows: int, cols: int) -> np.ndarray:
    """Zero integer matrix."""
    out = np.empty((rows, cols), dtype=object)
    out.fill(0)
    return out


def identity(n: int) -> np.ndarray:
    """Identity integer matrix."""
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def int_matrix(rows: Iterable[Sequence[int]], ncols: Optional[int] = None) -> np.ndarray:
    """
    Build an integer matrix from nested sequences

    Args:
        rows: Iterable of rows
        ncols: Column count, required when ``rows`` is empty

    Returns:
        Object-dtype matrix of Python ints
    """
    rows = [[int(x) for x in r] for r in rows]
    if not rows:
        return zeros(0, ncols or 0)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged integer matrix")
    out = zeros(len(rows), width)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = x
    return out


def as_matrix(a, ncols: Optional[int] = None) -> np.ndarray:
    if isinstance(a, np.ndarray) and a.dtype == object and a.ndim == 2:
        return a
    if isinstance(a, np.ndarray) and a.ndim == 2:
        return int_matrix(a.tolist(), a.shape[1])
    return int_matrix(a, ncols)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact matrix product, well defined for empty inner dimensions."""
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} x {b.shape}")
    if 0 in (a.shape[0], a.shape[1], b.shape[1]):
        return zeros(a.shape[0], b.shape[1])
    return a.dot(b)


def vecmat(v: Sequence[int], a: np.ndarray) -> Vector:
    """Row vector times matrix."""
    if len(v) != a.shape[0]:
        raise ValueError(f"length {len(v)} does not match {a.shape}")
    out = [0] * a.shape[1]
    for i, x in enumerate(v):
        if x:
            row = a[i]
            for j in range(a.shape[1]):
                if row[j]:
                    out[j] += x * row[j]
    return tuple(out)


def stack(blocks: Sequence[np.ndarray], ncols: int) -> np.ndarray:
    """Vertical concatenation tolerant of empty blocks."""
    blocks = [b for b in blocks if b.shape[0]]
    if not blocks:
        return zeros(0, ncols)
    return np.vstack(blocks).astype(object)


def block_diagonal(blocks: Sequence[np.ndarray]) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


def determinant(a: np.ndarray) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = a.shape[0]
    if n == 0:
        return 1
    m = [[int(x) for x in row] for row in a.tolist()]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g


# ----------------------------------------------------------------------
# elementary reduction with tracked transforms
# ----------------------------------------------------------------------

class _Reducer:
    """
    Elementary row/column operations on D keeping U·A·V = D

    The inverses Uinv and Vinv are updated alongside so quotient
    coordinates and group generators come for free.
    """

    def __init__(self, a: np.ndarray, columns: bool = True):
        self.D = a.copy()
        m, n = a.shape
        self.U = identity(m)
        self.Uinv = identity(m)
        self.V = identity(n) if columns else None
        self.Vinv = identity(n) if columns else None

    def row_add(self, dst: int, src: int, k: int) -> None:
        if k == 0:
            return
        self.D[dst, :] = self.D[dst, :] + k * self.D[src, :]
        self.U[dst, :] = self.U[dst, :] + k * self.U[src, :]
        self.Uinv[:, src] = self.Uinv[:, src] - k * self.Uinv[:, dst]

    def row_swap(self, i: int, j: int) -> None:
        if i == j:
            return
        self.D[[i, j], :] = self.D[[j, i], :]
        self.U[[i, j], :] = self.U[[j, i], :]
        self.Uinv[:, [i, j]] = self.Uinv[:, [j, i]]

    def row_negate(self, i: int) -> None:
        self.D[i, :] = -self.D[i, :]
        self.U[i, :] = -self.U[i, :]
        self.Uinv[:, i] = -self.Uinv[:, i]

    def col_add(self, dst: int, src: int, k: int) -> None:
        if k == 0:
            return
        self.D[:, dst] = self.D[:, dst] + k * self.D[:, src]
        self.V[:, dst] = self.V[:, dst] + k * self.V[:, src]
        self.Vinv[src, :] = self.Vinv[src, :] - k * self.Vinv[dst, :]

    def col_swap(self, i: int, j: int) -> None:
        if i == j:
            return
        self.D[:, [i, j]] = self.D[:, [j, i]]
        self.V[:, [i, j]] = self.V[:, [j, i]]
        self.Vinv[[i, j], :] = self.Vinv[[j, i], :]


def _hermite(a: np.ndarray) -> Tuple[_Reducer, List[int]]:
    red = _Reducer(a, columns=False)
    D = red.D
    m, n = D.shape
    pivots: List[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nonzero = [i for i in range(r, m) if D[i, c] != 0]
            if not nonzero:
                break
            piv = min(nonzero, key=lambda i: abs(D[i, c]))
            red.row_swap(r, piv)
            for i in range(r + 1, m):
                if D[i, c] != 0:
                    red.row_add(i, r, -(D[i, c] // D[r, c]))
            if all(D[i, c] == 0 for i in range(r + 1, m)):
                break
        if D[r, c] == 0:
            continue
        if D[r, c] < 0:
            red.row_negate(r)
        for i in range(r):
            red.row_add(i, r, -(D[i, c] // D[r, c]))
        pivots.append(c)
        r += 1
    return red, pivots


def hermite_normal_form(a) -> Tuple[np.ndarray, np.ndarray]:
    """
    Row Hermite normal form

    Pivots are positive, entries above a pivot lie in [0, pivot) and zero
    rows sit at the bottom.

    Args:
        a: Integer matrix

    Returns:
        (H, U) with U unimodular and U·A = H

    Examples:
        >>> H, U = hermite_normal_form([[2, 4], [1, 2]])
        >>> H.tolist()
        [[1, 2], [0, 0]]
    """
    red, _ = _hermite(as_matrix(a))
    return red.D, red.U


def smith_reduction(a) -> _Reducer:
    """Smith normal form with all four transform matrices."""
    red = _Reducer(as_matrix(a))
    D = red.D
    m, n = D.shape
    t = 0
    while t < min(m, n):
        entries = [(abs(D[i, j]), i, j) for i in range(t, m) for j in range(t, n) if D[i, j] != 0]
        if not entries:
            break
        _, i0, j0 = min(entries)
        red.row_swap(t, i0)
        red.col_swap(t, j0)
        p = D[t, t]
        clean = True
        for i in range(t + 1, m):
            if D[i, t] != 0:
                red.row_add(i, t, -(D[i, t] // p))
                clean = clean and D[i, t] == 0
        for j in range(t + 1, n):
            if D[t, j] != 0:
                red.col_add(j, t, -(D[t, j] // p))
                clean = clean and D[t, j] == 0
        if not clean:
            continue
        bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if D[i, j] % p != 0), None)
        if bad is not None:
            red.row_add(t, bad, 1)
            continue
        if p < 0:
            red.row_negate(t)
        t += 1
    return red


def smith_normal_form(a) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Smith normal form

    Args:
        a: Integer matrix

    Returns:
        (D, U, V) with U·A·V = D, U and V unimodular, and the diagonal of
        D a nonnegative divisibility chain
    """
    red = smith_reduction(a)
    return red.D, red.U, red.V


def diagonal(d: np.ndarray) -> List[int]:
    return [int(d[i, i]) for i in range(min(d.shape))]


def invariant_factors(a) -> List[int]:
    """Nonzero diagonal entries of the Smith form, in divisibility order."""
    return [x for x in diagonal(smith_reduction(a).D) if x != 0]


def rank(a) -> int:
    a = as_matrix(a)
    if 0 in a.shape:
        return 0
    return len(_hermite(a)[1])


# ----------------------------------------------------------------------
# rational helpers
# ----------------------------------------------------------------------

def rational_solve(a, b: Sequence) -> Optional[List[Fraction]]:
    """
    Solve x·A = b over the rationals

    Returns:
        One solution (free variables set to zero) or None if inconsistent
    """
    a = as_matrix(a)
    m, n = a.shape
    # columns of A become equations
    rows = [[Fraction(a[i, j]) for i in range(m)] + [Fraction(b[j])] for j in range(n)]
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(rows[i][m] != 0 for i in range(r, n)):
        return None
    x = [Fraction(0)] * m
    for i, c in enumerate(pivots):
        x[c] = rows[i][m]
    return x


def clear_denominators(v: Sequence[Fraction]) -> Vector:
    """Smallest positive multiple of a rational vector that is integral."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    return tuple(int(Fraction(x) * den) for x in v)


def rational_kernel(a) -> List[List[Fraction]]:
    """Basis of {x : x·A = 0} over Q."""
    k = left_kernel(a)
    return [[Fraction(x) for x in row] for row in k.vectors()]


# ----------------------------------------------------------------------
# sublattices
# ----------------------------------------------------------------------

class SublatticeBasis:
    """
    Sublattice of Z^n stored by its canonical HNF basis rows

    Two sublattices are equal exactly when their bases coincide.

    Attributes
    ----------
    ambient_rank : int
        n
    basis : np.ndarray
        k x n matrix in row Hermite normal form, rows independent
    """

    __slots__ = ("ambient_rank", "basis", "_pivots")

    def __init__(self, ambient_rank: int, basis: np.ndarray, pivots: Optional[List[int]] = None):
        self.ambient_rank = ambient_rank
        self.basis = basis
        if pivots is None:
            pivots = [next(j for j in range(ambient_rank) if row[j] != 0) for row in basis]
        self._pivots = pivots

    @classmethod
    def from_generators(cls, ambient_rank: int, generators) -> "SublatticeBasis":
        gens = as_matrix(generators, ambient_rank)
        if gens.shape[0] == 0:
            return cls.zero(ambient_rank)
        if gens.shape[1] != ambient_rank:
            raise ValueError(f"generators have {gens.shape[1]} columns, expected {ambient_rank}")
        red, pivots = _hermite(gens)
        return cls(ambient_rank, red.D[:len(pivots), :].copy(), pivots)

    @classmethod
    def zero(cls, ambient_rank: int) -> "SublatticeBasis":
        return cls(ambient_rank, zeros(0, ambient_rank), [])

    @classmethod
    def full(cls, ambient_rank: int) -> "SublatticeBasis":
        return cls(ambient_rank, identity(ambient_rank), list(range(ambient_rank)))

    @property
    def rank(self) -> int:
        return self.basis.shape[0]

    def vectors(self) -> List[Vector]:
        return [tuple(int(x) for x in row) for row in self.basis.tolist()]

    def _solve(self, v: Sequence, exact: bool):
        coords = []
        for i, p in enumerate(self._pivots):
            acc = Fraction(v[p]) if not exact else int(v[p])
            for j in range(i):
                acc -= coords[j] * self.basis[j, p]
            piv = self.basis[i, p]
            if exact:
                if acc % piv != 0:
                    return None
                coords.append(acc // piv)
            else:
                coords.append(Fraction(acc) / piv)
        back = [sum((coords[i] * self.basis[i, j] for i in range(self.rank)), 0)
                for j in range(self.ambient_rank)]
        if any(Fraction(back[j]) != Fraction(v[j]) for j in range(self.ambient_rank)):
            return None
        return coords

    def coordinates(self, v: Sequence[int]) -> Vector:
        """
        Coordinates of v in the basis

        Raises:
            ValueError: If v is not in the lattice
        """
        if len(v) != self.ambient_rank:
            raise ValueError(f"vector of length {len(v)} in rank-{self.ambient_rank} ambient")
        coords = self._solve(v, exact=True)
        if coords is None:
            raise ValueError(f"vector {tuple(v)} is not in the lattice")
        return tuple(int(c) for c in coords)

    def rational_coordinates(self, v: Sequence) -> Optional[List[Fraction]]:
        if len(v) != self.ambient_rank:
            raise ValueError(f"vector of length {len(v)} in rank-{self.ambient_rank} ambient")
        return self._solve(v, exact=False)

    def contains(self, v: Sequence[int]) -> bool:
        return len(v) == self.ambient_rank and self._solve(v, exact=True) is not None

    def in_span(self, v: Sequence) -> bool:
        return self.rational_coordinates(v) is not None

    def contains_lattice(self, other: "SublatticeBasis") -> bool:
        return all(self.contains(v) for v in other.vectors())

    def coordinate_matrix(self, vectors: Iterable[Sequence[int]]) -> np.ndarray:
        """Matrix whose rows are the coordinates of ``vectors``."""
        return int_matrix([self.coordinates(v) for v in vectors], self.rank)

    def sum(self, other: "SublatticeBasis") -> "SublatticeBasis":
        return SublatticeBasis.from_generators(
            self.ambient_rank, stack([self.basis, other.basis], self.ambient_rank))

    def image(self, m: np.ndarray) -> "SublatticeBasis":
        """Image of the lattice under x -> x·m."""
        return SublatticeBasis.from_generators(m.shape[1], matmul(self.basis, m))

    def index_in_saturation(self) -> int:
        factors = invariant_factors(self.basis)
        out = 1
        for d in factors:
            out *= d
        return out

    def is_saturated(self) -> bool:
        return self.index_in_saturation() == 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, SublatticeBasis):
            return NotImplemented
        return (self.ambient_rank == other.ambient_rank
                and self.basis.shape == other.basis.shape
                and bool(np.all(self.basis == other.basis)))

    def __hash__(self) -> int:
        return hash((self.ambient_rank, tuple(self.vectors())))

    def __repr__(self) -> str:
        return f"SublatticeBasis(ambient_rank={self.ambient_rank}, basis={self.vectors()})"


def left_kernel(a) -> SublatticeBasis:
    """Saturated integer basis of {x : x·A = 0}."""
    a = as_matrix(a)
    m = a.shape[0]
    if m == 0:
        return SublatticeBasis.zero(0)
    if a.shape[1] == 0:
        return SublatticeBasis.full(m)
    red, pivots = _hermite(a)
    return SublatticeBasis.from_generators(m, red.U[len(pivots):, :])


def right_kernel(a) -> SublatticeBasis:
    """Saturated integer basis of {y : A·y = 0}."""
    return left_kernel(as_matrix(a).T.copy())


def saturate(lattice: SublatticeBasis) -> SublatticeBasis:
    """
    Saturation {v in Z^n : k·v in L for some k >= 1}

    Examples:
        >>> saturate(SublatticeBasis.from_generators(2, [[1, 1], [1, -1]])).vectors()
        [(1, 0), (0, 1)]
    """
    if lattice.rank == 0:
        return lattice
    red = smith_reduction(lattice.basis)
    return SublatticeBasis.from_generators(lattice.ambient_rank, red.Vinv[:lattice.rank, :])


def quotient_coordinates(lattice: SublatticeBasis) -> Tuple[np.ndarray, np.ndarray]:
    """
    Coordinates on Z^n / L for a saturated L of rank k

    Returns:
        (P, R) with P of shape n x (n-k) and R of shape (n-k) x n such that
        x -> x·P has kernel exactly L and R·P is the identity. Rows of R
        lift the standard basis of the quotient.
    """
    n, k = lattice.ambient_rank, lattice.rank
    if k == 0:
        return identity(n), identity(n)
    red = smith_reduction(lattice.basis)
    if any(x != 1 for x in diagonal(red.D)[:k]):
        raise ValueError("quotient coordinates require a saturated lattice")
    return red.V[:, k:].copy(), red.Vinv[k:, :].copy()


def primitive(v: Sequence[int], lattice: Optional[SublatticeBasis] = None) -> Vector:
    """
    Generator of the lattice points on the ray through v

    Args:
        v: Nonzero integer vector in the span of the lattice
        lattice: Lattice (default Z^n)

    Raises:
        ValueError: If v is zero or not in the span of the lattice

    Examples:
        >>> primitive((2, 4))
        (1, 2)
    """
    if not any(v):
        raise ValueError("the zero vector has no primitive generator")
    if lattice is None:
        g = content(v)
        return tuple(int(x) // g for x in v)
    coords = lattice.rational_coordinates(v)
    if coords is None:
        raise ValueError(f"vector {tuple(v)} is not in the span of the lattice")
    ints = clear_denominators(coords)
    g = content(ints)
    return vecmat([c // g for c in ints], lattice.basis)


# ----------------------------------------------------------------------
# finitely generated abelian groups
# ----------------------------------------------------------------------

def _canonical_torsion(orders: Iterable[int]) -> Tuple[int, Tuple[int, ...]]:
    orders = [abs(int(d)) for d in orders if abs(int(d)) != 1]
    free = sum(1 for d in orders if d == 0)
    finite = [d for d in orders if d != 0]
    if not finite:
        return free, ()
    n = len(finite)
    d = zeros(n, n)
    for i, x in enumerate(finite):
        d[i, i] = x
    return free, tuple(x for x in invariant_factors(d) if x != 1)


@dataclass
class Presentation:
    """
    Reduction data for Z^n / rowspan(relations)

    A vector v (in the coordinates of ``basis`` when one is attached, else
    of Z^n) maps to y = v·V; torsion coordinates are reduced modulo their
    order and coordinates of order one are dropped.
    """

    ambient_rank: int
    V: np.ndarray
    Vinv: np.ndarray
    orders: List[int]
    basis: Optional[SublatticeBasis] = None

    def _coordinates(self, v: Sequence[int]) -> Sequence[int]:
        return self.basis.coordinates(v) if self.basis is not None else v

    def reduce(self, v: Sequence[int]) -> Vector:
        y = vecmat(self._coordinates(v), self.V)
        out = []
        for i, d in enumerate(self.orders):
            if d == 1:
                continue
            out.append(y[i] % d if d else y[i])
        return tuple(out)

    def is_zero(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def generators(self) -> List[Vector]:
        """Representatives of the canonical generators (torsion first, then free)."""
        gens = []
        for i, d in enumerate(self.orders):
            if d == 1:
                continue
            row = tuple(int(x) for x in self.Vinv[i])
            gens.append(vecmat(row, self.basis.basis) if self.basis is not None else row)
        return gens

    def lift(self, coords: Sequence[int]) -> Vector:
        full = []
        it = iter(coords)
        for d in self.orders:
            full.append(0 if d == 1 else next(it))
        row = vecmat(full, self.Vinv)
        return vecmat(row, self.basis.basis) if self.basis is not None else row


@dataclass(frozen=True)
class FinAbGroup:
    """
    Finitely generated abelian group Z^r + Z/d1 + ... + Z/dk

    Equality compares invariants only; the optional presentation is
    carried for element arithmetic.
    """

    free_rank: int
    torsion: Tuple[int, ...] = ()
    presentation: Optional[Presentation] = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")
        if any(d < 2 for d in self.torsion):
            raise ValueError(f"torsion entries must be >= 2: {self.torsion}")

    @classmethod
    def free(cls, r: int) -> "FinAbGroup":
        return cls(r, ())

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "FinAbGroup":
        """Group from cyclic orders (0 meaning Z), normalized to invariant factors."""
        free, torsion = _canonical_torsion(orders)
        return cls(free, torsion)

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_free(self) -> bool:
        return not self.torsion

    @property
    def order_of_torsion(self) -> int:
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def rationalize(self) -> "FinAbGroup":
        return FinAbGroup(self.free_rank, ())

    def __add__(self, other: "FinAbGroup") -> "FinAbGroup":
        return direct_sum([self, other])

    def to_dict(self) -> Dict[str, object]:
        return {"rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "FinAbGroup":
        return cls(int(data["rank"]), tuple(int(d) for d in data.get("torsion", [])))

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def direct_sum(groups: Iterable[FinAbGroup]) -> FinAbGroup:
    groups = list(groups)
    free = sum(g.free_rank for g in groups)
    orders = [d for g in groups for d in g.torsion]
    extra, torsion = _canonical_torsion(orders)
    return FinAbGroup(free + extra, torsion)


def quotient_group(ambient_rank: int, relations=None) -> FinAbGroup:
    """
    Z^n modulo the row span of ``relations``

    Examples:
        >>> str(quotient_group(3, [[1, -1, 0], [0, 3, -3]]))
        'Z + Z/3'
    """
    rel = as_matrix(relations if relations is not None else [], ambient_rank)
    if rel.shape[1] != ambient_rank:
        raise ValueError(f"relations have {rel.shape[1]} columns, expected {ambient_rank}")
    if rel.shape[0] == 0:
        pres = Presentation(ambient_rank, identity(ambient_rank), identity(ambient_rank), [0] * ambient_rank)
        return FinAbGroup(ambient_rank, (), pres)
    red = smith_reduction(rel)
    diag = diagonal(red.D)
    orders = diag + [0] * (ambient_rank - len(diag))
    torsion = tuple(d for d in orders if d > 1)
    free = sum(1 for d in orders if d == 0)
    pres = Presentation(ambient_rank, red.V, red.Vinv, orders)
    return FinAbGroup(free, torsion, pres)


def subquotient(cycles: SublatticeBasis, boundaries) -> FinAbGroup:
    """
    Z / B for lattices B ⊆ Z ⊆ Z^n

    Args:
        cycles: The lattice Z
        boundaries: Generators of B (rows, ambient coordinates)

    Returns:
        Group whose presentation reduces ambient vectors of Z
    """
    gens = as_matrix(boundaries, cycles.ambient_rank)
    coords = int_matrix([cycles.coordinates(tuple(row)) for row in gens.tolist()], cycles.rank)
    group = quotient_group(cycles.rank, coords)
    group.presentation.basis = cycles
    return group


# ----------------------------------------------------------------------
# exterior algebra
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def plucker_subsets(n: int, p: int) -> Tuple[Tuple[int, ...], ...]:
    """p-subsets of range(n) in lexicographic order."""
    return tuple(combinations(range(n), p))


@lru_cache(maxsize=None)
def plucker_index(n: int, p: int) -> Dict[Tuple[int, ...], int]:
    return {s: i for i, s in enumerate(plucker_subsets(n, p))}


def compound_matrix(a, p: int) -> np.ndarray:
    """
    p-th compound matrix: p x p minors, rows and columns in lexicographic
    subset order. In row convention Λ^p(x·A) = Λ^p(x)·C_p(A).
    """
    a = as_matrix(a)
    m, n = a.shape
    rows = plucker_subsets(m, p)
    cols = plucker_subsets(n, p)
    out = zeros(len(rows), len(cols))
    for i, r in enumerate(rows):
        sub = a[list(r), :] if p else None
        for j, c in enumerate(cols):
            out[i, j] = determinant(sub[:, list(c)]) if p else 1
    return out


def wedge(vectors: Sequence[Sequence[int]], n: int) -> Vector:
    """Plücker coordinates of v1 ∧ ... ∧ vp in Λ^p Z^n."""
    p = len(vectors)
    if p == 0:
        return (1,)
    return tuple(int(x) for x in compound_matrix(int_matrix(vectors, n), p)[0])


def shuffle_sign(first: Sequence[int], second: Sequence[int]) -> int:
    """Sign of the permutation sorting the concatenation of two sorted index lists."""
    inversions = 0
    for i in first:
        for j in second:
            if i > j:
                inversions += 1
    return -1 if inversions % 2 else 1


def wedge_product(x: Sequence[int], p: int, y: Sequence[int], q: int, n: int) -> Vector:
    """Product of x in Λ^p Z^n and y in Λ^q Z^n."""
    if p + q > n:
        return ()
    out = [0] * comb(n, p + q)
    index = plucker_index(n, p + q)
    xs, ys = plucker_subsets(n, p), plucker_subsets(n, q)
    for i, a in enumerate(x):
        if not a:
            continue
        for j, b in enumerate(y):
            if not b:
                continue
            I, J = xs[i], ys[j]
            if set(I) & set(J):
                continue
            out[index[tuple(sorted(I + J))]] += shuffle_sign(I, J) * a * b
    return tuple(out)


def exterior_power_basis(lattice: SublatticeBasis, p: int) -> SublatticeBasis:
    """
    Λ^p of a sublattice, inside Λ^p Z^n with Plücker coordinates

    p = 0 gives Z; p larger than the rank gives the zero lattice.

    Examples:
        >>> L = SublatticeBasis.from_generators(3, [[1, 0, 0], [0, 1, 1]])
        >>> exterior_power_basis(L, 2).vectors()
        [(1, 1, 0)]
    """
    n = lattice.ambient_rank
    if p == 0:
        return SublatticeBasis.full(1)
    if p > lattice.rank:
        return SublatticeBasis.zero(comb(n, p))
    return SublatticeBasis.from_generators(comb(n, p), compound_matrix(lattice.basis, p))
