"""
Tropical Homology Engine
========================

Cellular chain complexes of a fan Σ and of its canonical compactification
Σ̄ with coefficients in the multi-tangent lattices F_p, and their integral
homology and cohomology with torsion.

Flavors:
    homology   H_{p,q}: chains on compact faces
    bm         H^BM_{p,q}: chains on all faces (Borel-Moore)
    cohom      H^{p,q}: cochains on compact faces
    c-cohom    H_c^{p,q}: cochains on all faces (compact support)

Matrices follow the row convention: a chain is a row vector x and its
boundary is x·D_q with D_q of shape dim C_q x dim C_{q-1}. Cochain
differentials are the transposes.

Also provides relative complexes, the hypercube complex of a unimodular
fan, the cap product with the fundamental class and the cup product on Σ̄.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .coefficients import CoefficientSystem, CompFace, comp_faces, fan_faces
from .exceptions import FanError
from .fan import Face, Fan, is_unimodular
from .lattice import (
    FinAbGroup,
    SublatticeBasis,
    Vector,
    compound_matrix,
    left_kernel,
    matmul,
    rank,
    rational_solve,
    shuffle_sign,
    stack,
    subquotient,
    vecmat,
    wedge,
    wedge_product,
    zeros,
)
from .utils import parallel_map

logger = logging.getLogger(__name__)

FLAVORS = ("homology", "bm", "cohom", "c-cohom")
COMPACT_FLAVORS = ("homology", "cohom")
COCHAIN_FLAVORS = ("cohom", "c-cohom")


def hstack(blocks: Sequence[np.ndarray], nrows: int) -> np.ndarray:
    """Horizontal concatenation tolerant of empty blocks."""
    blocks = [b for b in blocks if b.shape[1]]
    if not blocks:
        return zeros(nrows, 0)
    return np.hstack(blocks).astype(object)


def _subquotient(cycles: SublatticeBasis, boundaries: np.ndarray) -> FinAbGroup:
    if cycles.rank == 0:
        return FinAbGroup(0, ())
    return subquotient(cycles, boundaries)


# ----------------------------------------------------------------------
# chain complexes
# ----------------------------------------------------------------------

@dataclass
class ChainComplex:
    """
    Finite chain complex of free modules with indexed bases

    Attributes
    ----------
    p : int
        Coefficient degree
    cells : dict
        Degree -> faces carrying a summand, in basis order
    offsets : dict
        Degree -> face -> first basis index of its summand
    ranks : dict
        Face -> rank of its coefficient lattice
    boundaries : dict
        Degree q -> matrix of ∂_q (rows C_q, columns C_{q-1})
    """

    p: int
    cells: Dict[int, List] = field(default_factory=dict)
    offsets: Dict[int, Dict] = field(default_factory=dict)
    ranks: Dict = field(default_factory=dict)
    boundaries: Dict[int, np.ndarray] = field(default_factory=dict)

    @property
    def top(self) -> int:
        return max(self.cells, default=-1)

    def dim(self, q: int) -> int:
        return sum(self.ranks[c] for c in self.cells.get(q, []))

    def dims(self) -> List[int]:
        return [self.dim(q) for q in range(self.top + 1)]

    def boundary(self, q: int) -> np.ndarray:
        if q in self.boundaries:
            return self.boundaries[q]
        return zeros(self.dim(q), self.dim(q - 1))

    def coboundary(self, q: int) -> np.ndarray:
        """d^q: C^q -> C^{q+1} in row convention."""
        return self.boundary(q + 1).T.copy()

    def squares_to_zero(self) -> bool:
        for q in range(1, self.top + 1):
            prod = matmul(self.boundary(q + 1), self.boundary(q))
            if any(x != 0 for x in prod.flat):
                return False
        return True

    # homology ---------------------------------------------------------

    def cycles(self, q: int) -> SublatticeBasis:
        return left_kernel(self.boundary(q)) if self.dim(q) else SublatticeBasis.zero(0)

    def homology(self, q: int) -> FinAbGroup:
        z = self.cycles(q)
        logger.debug(f"[DEBUG] H_{self.p},{q}: dim {self.dim(q)}, cycles {z.rank}")
        return _subquotient(z, self.boundary(q + 1))

    # cohomology -------------------------------------------------------

    def cocycles(self, q: int) -> SublatticeBasis:
        return left_kernel(self.coboundary(q)) if self.dim(q) else SublatticeBasis.zero(0)

    def coboundaries(self, q: int) -> np.ndarray:
        return self.coboundary(q - 1)

    def cohomology(self, q: int) -> FinAbGroup:
        z = self.cocycles(q)
        logger.debug(f"[DEBUG] H^{self.p},{q}: dim {self.dim(q)}, cocycles {z.rank}")
        return _subquotient(z, self.coboundaries(q))

    def is_cocycle(self, q: int, values: Sequence[int]) -> bool:
        d = self.coboundary(q)
        return not any(vecmat(values, d)) if d.shape[1] else True

    def block(self, q: int, face) -> slice:
        start = self.offsets[q][face]
        return slice(start, start + self.ranks[face])


# ----------------------------------------------------------------------
# cell spaces
# ----------------------------------------------------------------------

SedentarityFilter = Union[None, Iterable[Face], Callable[[Face], bool]]


class CellComplex:
    """
    Fan Σ or a union of strata of its compactification Σ̄

    Parameters
    ----------
    fan : Fan
        Host simplicial fan
    faces : iterable of CompFace
        Cells of the space
    coefficients : CoefficientSystem, optional
        Shared coefficient cache of ``fan``
    """

    def __init__(self, fan: Fan, faces: Iterable[CompFace], coefficients: Optional[CoefficientSystem] = None,
                 name: str = ""):
        self.fan = fan
        self.faces: List[CompFace] = sorted(set(faces))
        self._face_set = set(self.faces)
        self.coefficients = coefficients or CoefficientSystem(fan)
        self.name = name
        self.logger = logging.getLogger(__name__)
        self._complexes: Dict[Tuple[int, bool], ChainComplex] = {}
        self._compact: Dict[CompFace, bool] = {}

    @classmethod
    def of_fan(cls, fan: Fan, coefficients: Optional[CoefficientSystem] = None) -> "CellComplex":
        return cls(fan, fan_faces(fan), coefficients, name="fan")

    @classmethod
    def compactification(cls, fan: Fan, sedentarity: SedentarityFilter = None,
                         coefficients: Optional[CoefficientSystem] = None) -> "CellComplex":
        """
        Σ̄, or the strata of Σ̄ whose sedentarity passes ``sedentarity``

        The filter is a predicate on sedentarity cones or a collection of
        allowed sedentarity cones.
        """
        faces = comp_faces(fan)
        if sedentarity is not None:
            if callable(sedentarity):
                keep = sedentarity
            else:
                allowed = {tuple(sorted(s)) for s in sedentarity}
                keep = allowed.__contains__
            faces = [f for f in faces if keep(f.sed)]
        return cls(fan, faces, coefficients, name="compactification")

    def __contains__(self, face: CompFace) -> bool:
        return face in self._face_set

    @cached_property
    def dim(self) -> int:
        return max((f.dim for f in self.faces), default=0)

    def is_compact(self, face: CompFace) -> bool:
        """A cell is compact in the space when its whole closure is."""
        if face not in self._compact:
            ok = all(g in self._face_set and self.is_compact(g) for g, _, _ in face.facets())
            self._compact[face] = ok
        return self._compact[face]

    def cells(self, compact_only: bool) -> List[CompFace]:
        return [f for f in self.faces if not compact_only or self.is_compact(f)]

    def chain_complex(self, p: int, compact_only: bool = False) -> ChainComplex:
        """C_{p,•} on compact cells or on all cells (Borel-Moore)."""
        key = (p, compact_only)
        if key not in self._complexes:
            self._complexes[key] = self._build(p, compact_only)
        return self._complexes[key]

    def _build(self, p: int, compact_only: bool) -> ChainComplex:
        coeff = self.coefficients
        cx = ChainComplex(p)
        for face in self.cells(compact_only):
            r = coeff.rank(face, p)
            if r == 0:
                continue
            cx.ranks[face] = r
            q = face.dim
            offs = cx.offsets.setdefault(q, {})
            offs[face] = sum(cx.ranks[c] for c in cx.cells.get(q, []))
            cx.cells.setdefault(q, []).append(face)
        for q in range(1, cx.top + 1):
            D = zeros(cx.dim(q), cx.dim(q - 1))
            for face in cx.cells.get(q, []):
                rows = cx.block(q, face)
                for target, sign, _ in face.facets():
                    if target not in cx.ranks:
                        continue
                    block = coeff.coefficient_map(face, target, p)
                    D[rows, cx.block(q - 1, target)] += sign * block
            cx.boundaries[q] = D
        self.logger.debug(f"[DEBUG] {self.name} C_{p},•{' (compact)' if compact_only else ''}: dims {cx.dims()}")
        return cx


# ----------------------------------------------------------------------
# homology reports
# ----------------------------------------------------------------------

@dataclass
class Homology:
    """(p, q) -> FinAbGroup for one flavor"""

    flavor: str
    groups: Dict[Tuple[int, int], FinAbGroup] = field(default_factory=dict)

    def get(self, p: int, q: int) -> FinAbGroup:
        return self.groups.get((p, q), FinAbGroup(0, ()))

    __call__ = get

    def nonzero(self) -> Dict[Tuple[int, int], FinAbGroup]:
        return {k: g for k, g in sorted(self.groups.items()) if not g.is_zero}

    def rationalize(self) -> "Homology":
        return Homology(self.flavor, {k: g.rationalize() for k, g in self.groups.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Homology):
            return NotImplemented
        return self.nonzero() == other.nonzero()

    def to_dict(self) -> Dict[str, object]:
        return {
            "flavor": self.flavor,
            "groups": {f"{p},{q}": g.to_dict() for (p, q), g in sorted(self.groups.items())},
        }

    def __str__(self) -> str:
        body = ", ".join(f"({p},{q}): {g}" for (p, q), g in self.nonzero().items())
        return f"{self.flavor} {{{body}}}"


def _check_flavor(flavor: str) -> None:
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")


def as_space(x: Union[Fan, CellComplex]) -> CellComplex:
    return x if isinstance(x, CellComplex) else CellComplex.of_fan(x)


def build_complex(x: Union[Fan, CellComplex], p: int, flavor: str) -> ChainComplex:
    """Chain complex underlying a flavor (cochain flavors use its transpose)."""
    _check_flavor(flavor)
    return as_space(x).chain_complex(p, compact_only=flavor in COMPACT_FLAVORS)


def homology(x: Union[Fan, CellComplex], flavor: str = "bm", threads: Optional[int] = None,
             progress: bool = False) -> Homology:
    """
    All bidegrees (p, q), 0 <= p, q <= dim, of one flavor

    Args:
        x: Fan (the space Σ) or CellComplex
        flavor: homology, bm, cohom or c-cohom
        threads: Worker cap for the per-p computations
        progress: Show a tqdm bar
    """
    _check_flavor(flavor)
    space = as_space(x)
    d = space.fan.dim
    top = space.dim

    def one_p(p: int) -> Dict[Tuple[int, int], FinAbGroup]:
        cx = build_complex(space, p, flavor)
        out = {}
        for q in range(top + 1):
            out[(p, q)] = cx.cohomology(q) if flavor in COCHAIN_FLAVORS else cx.homology(q)
        return out

    result = Homology(flavor)
    for part in parallel_map(one_p, list(range(d + 1)), desc=f"{flavor} p", threads=threads, progress=progress):
        result.groups.update(part)
    return result


# ----------------------------------------------------------------------
# relative complexes
# ----------------------------------------------------------------------

def _check_subcomplex(space: CellComplex, sub: CellComplex) -> None:
    if sub.fan.rank != space.fan.rank or sub.fan.rays[:len(sub.fan.rays)] != space.fan.rays[:len(sub.fan.rays)]:
        raise FanError("NOT_A_SUBCOMPLEX", "the subfan must share the rays of the ambient fan")
    for f in sub.faces:
        if f not in space:
            raise FanError("NOT_A_SUBCOMPLEX", f"face {f} is not a face of the ambient space", witness=str(f))


def inclusion_map(space: CellComplex, sub: CellComplex, p: int, q: int, compact_only: bool) -> np.ndarray:
    """C_{p,q}(A) -> C_{p,q}(X): rows are the basis of A's chains in X's coordinates."""
    cx = space.chain_complex(p, compact_only)
    ca = sub.chain_complex(p, compact_only)
    L = zeros(ca.dim(q), cx.dim(q))
    for face in ca.cells.get(q, []):
        if face not in cx.ranks:
            raise FanError("NOT_A_SUBCOMPLEX", f"cell {face} missing from the ambient complex", witness=str(face))
        big = space.coefficients.coef_lattice(face, p)
        small = sub.coefficients.coef_lattice(face, p)
        L[ca.block(q, face), cx.block(q, face)] = big.coordinate_matrix(small.vectors())
    return L


def relative_homology(space: Union[Fan, CellComplex], sub: Union[Fan, CellComplex], flavor: str = "bm") -> Homology:
    """
    (Co)homology of the pair (X, A)

    Chains: the quotient complex C(X)/C(A). Cochains: cochains of X
    vanishing on C(A). A's coefficients may be strictly smaller than X's
    on shared faces.

    Raises:
        FanError: NOT_A_SUBCOMPLEX
    """
    _check_flavor(flavor)
    space, sub = as_space(space), as_space(sub)
    _check_subcomplex(space, sub)
    compact = flavor in COMPACT_FLAVORS
    d = space.fan.dim
    result = Homology(flavor)
    for p in range(d + 1):
        cx = space.chain_complex(p, compact)
        incl = {q: inclusion_map(space, sub, p, q, compact) for q in range(-1, space.dim + 2)}
        for q in range(space.dim + 1):
            n_q = cx.dim(q)
            if n_q == 0:
                result.groups[(p, q)] = FinAbGroup(0, ())
                continue
            if flavor in COCHAIN_FLAVORS:
                Lt = incl[q].T.copy()
                z = left_kernel(hstack([cx.coboundary(q), Lt], n_q))
                prev = left_kernel(incl[q - 1].T.copy()) if cx.dim(q - 1) else SublatticeBasis.zero(0)
                b = matmul(prev.basis, cx.coboundary(q - 1)) if prev.rank else zeros(0, n_q)
                result.groups[(p, q)] = _subquotient(z, b)
            else:
                D = cx.boundary(q)
                kernel = left_kernel(stack([D, incl[q - 1]], D.shape[1])) if D.shape[1] else None
                if kernel is None:
                    z = SublatticeBasis.full(n_q)
                else:
                    z = SublatticeBasis.from_generators(n_q, [v[:n_q] for v in kernel.vectors()])
                b = stack([cx.boundary(q + 1), incl[q]], n_q)
                result.groups[(p, q)] = _subquotient(z, b)
    return result


# ----------------------------------------------------------------------
# hypercube complex
# ----------------------------------------------------------------------

def hypercube_complex(fan: Fan, p: int, coefficients: Optional[CoefficientSystem] = None) -> ChainComplex:
    """
    Complex C̃^{p,•}(Σ̄) = ⊕_{|σ|=q} F^{p-q}(∞_σ), returned as its dual chain complex

    The summand of σ sits in degree q = |σ| and carries F_{p-q}(σ, σ). The
    dual of the differential sends β in F_{k-1}(∞_σ) to e^τ_σ ∧ lift(β) in
    F_k(∞_τ) for τ a facet of σ. Its cohomology is H^{p,•}(Σ̄).

    Raises:
        FanError: NOT_UNIMODULAR
    """
    if not is_unimodular(fan):
        raise FanError("NOT_UNIMODULAR", "the hypercube complex needs a unimodular fan")
    coeff = coefficients or CoefficientSystem(fan)
    cx = ChainComplex(p)
    for sigma in fan.faces:
        q = len(sigma)
        k = p - q
        if k < 0:
            continue
        face = CompFace(sigma, sigma)
        r = coeff.rank(face, k)
        if r == 0:
            continue
        cx.ranks[face] = r
        offs = cx.offsets.setdefault(q, {})
        offs[face] = sum(cx.ranks[c] for c in cx.cells.get(q, []))
        cx.cells.setdefault(q, []).append(face)
    for q in range(1, cx.top + 1):
        D = zeros(cx.dim(q), cx.dim(q - 1))
        k = p - q + 1
        for face in cx.cells.get(q, []):
            sigma = face.apex
            for s in sigma:
                tau = tuple(i for i in sigma if i != s)
                target = CompFace(tau, tau)
                if target not in cx.ranks:
                    continue
                amb = coeff.ambient(tau)
                e = coeff.normal_vector(tau, s)
                lift = compound_matrix(_lift(coeff, sigma, tau), k - 1)
                src = coeff.coef_lattice(face, k - 1)
                dst = coeff.coef_lattice(target, k)
                rows = [wedge_product(e, 1, vecmat(beta, lift), k - 1, amb) for beta in src.vectors()]
                D[cx.block(q, face), cx.block(q - 1, target)] = dst.coordinate_matrix(rows)
        cx.boundaries[q] = D
    return cx


def _lift(coeff: CoefficientSystem, sigma: Face, tau: Face) -> np.ndarray:
    """N^σ -> N^τ, y -> y·R_σ·P_τ, a section of the projection."""
    _, R = coeff.quotient(sigma)
    P, _ = coeff.quotient(tau)
    return matmul(R, P)


def hypercube_cohomology(fan: Fan, coefficients: Optional[CoefficientSystem] = None) -> Homology:
    out = Homology("cohom")
    d = fan.dim
    for p in range(d + 1):
        cx = hypercube_complex(fan, p, coefficients)
        for q in range(d + 1):
            out.groups[(p, q)] = cx.cohomology(q)
    return out


# ----------------------------------------------------------------------
# cap product with the fundamental class
# ----------------------------------------------------------------------

@dataclass
class CapProduct:
    """α -> ι_α(ν_Σ) from F^p(0) to H^BM_{d-p,d}"""

    p: int
    matrix: np.ndarray
    cycles: SublatticeBasis
    injective: bool
    surjective: bool
    cokernel: FinAbGroup

    def to_dict(self) -> Dict[str, object]:
        return {
            "p": self.p,
            "injective": self.injective,
            "surjective": self.surjective,
            "cokernel": self.cokernel.to_dict(),
        }


def fundamental_chain(fan: Fan, coefficients: Optional[CoefficientSystem] = None) -> Vector:
    """ν_Σ = Σ w_η ν_η in C^BM_{d,d}(Σ)."""
    return tuple(int(x) for x in cap_matrix(fan, 0, coefficients)[0])


def cap_matrix(fan: Fan, p: int, coefficients: Optional[CoefficientSystem] = None) -> np.ndarray:
    """
    Rows: ι_α(ν_Σ) for α running over the dual basis of F_p(0)

    ι_α(u_1∧...∧u_d) = Σ_I sign(I, I^c) α(u_I) u_{I^c}.
    """
    if not fan.is_pure:
        raise FanError("NOT_PURE", "the fundamental class needs a pure fan")
    space = CellComplex.of_fan(fan, coefficients)
    coeff = space.coefficients
    d, n = fan.dim, fan.rank
    cx = space.chain_complex(d - p)
    origin = coeff.coef_lattice(CompFace((), ()), p)
    M = zeros(origin.rank, cx.dim(d))
    for eta in fan.max_cones:
        if len(eta) != d:
            continue
        face = CompFace((), eta)
        if face not in cx.ranks:
            continue
        u = fan.lattice(eta).vectors()
        nu = coeff.nu(face)
        eps = 1 if nu == wedge(u, n) else -1
        w = fan.weight(eta)
        target = coeff.coef_lattice(face, d - p)
        cols = cx.block(d, face)
        for I in combinations(range(d), p):
            Ic = tuple(i for i in range(d) if i not in I)
            a_I = origin.coordinates(wedge([u[i] for i in I], n))
            c_Ic = target.coordinates(wedge([u[i] for i in Ic], n))
            s = eps * w * shuffle_sign(I, Ic)
            for j, a in enumerate(a_I):
                if a:
                    for k, c in enumerate(c_Ic):
                        if c:
                            M[j, cols.start + k] += s * a * c
    return M


def cap_with_fundamental(fan: Fan, p: int, coefficients: Optional[CoefficientSystem] = None) -> CapProduct:
    """
    Cap product with the fundamental class in bidegree (p, 0)

    Raises:
        FanError: NOT_PURE, or UNBALANCED when ν_Σ is not a cycle
    """
    coefficients = coefficients or CoefficientSystem(fan)
    d = fan.dim
    space = CellComplex.of_fan(fan, coefficients)
    top = space.chain_complex(d)
    nu = fundamental_chain(fan, coefficients)
    if top.dim(d) and top.dim(d - 1) and any(vecmat(nu, top.boundary(d))):
        raise FanError("UNBALANCED", "ν_Σ is not a cycle; the fan is not balanced")
    cx = space.chain_complex(d - p)
    M = cap_matrix(fan, p, coefficients)
    cycles = cx.cycles(d) if cx.dim(d) else SublatticeBasis.zero(0)
    if cx.dim(d) and cx.dim(d - 1):
        prod = matmul(M, cx.boundary(d))
        if any(x != 0 for x in prod.flat):
            raise FanError("UNBALANCED", "the contraction of ν_Σ is not a cycle")
    image = SublatticeBasis.from_generators(cx.dim(d), M) if M.shape[0] else SublatticeBasis.zero(cx.dim(d))
    cokernel = _subquotient(cycles, M)
    return CapProduct(p, M, cycles, rank(M) == M.shape[0], image == cycles, cokernel)


# ----------------------------------------------------------------------
# cup product on Σ̄
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Cochain:
    """Cochain of C^{p,q}(Σ̄) in the dual basis of the cellular complex"""

    p: int
    q: int
    values: Vector


class CupProduct:
    """
    Cubical cup product on the compactification of a fan

    (a⌣b)(τ, η) = Σ_σ ± a(τ, σ)|_{(τ,η)} ∧ π^* b(σ, η), the sum running
    over τ ⊆ σ ⊆ η with |σ \\ τ| = q(a), signed by the shuffle of the
    cube coordinates σ \\ τ and η \\ σ.
    """

    def __init__(self, fan: Fan, coefficients: Optional[CoefficientSystem] = None):
        self.fan = fan
        self.space = CellComplex.compactification(fan, coefficients=coefficients)
        self.coefficients = self.space.coefficients
        self.logger = logging.getLogger(__name__)

    def complex(self, p: int) -> ChainComplex:
        return self.space.chain_complex(p)

    def unit(self) -> Cochain:
        cx = self.complex(0)
        return Cochain(0, 0, tuple([1] * cx.dim(0)))

    def _value(self, c: Cochain, face: CompFace, v: Sequence[int]) -> int:
        """Evaluate the cochain c on v in F_p(face)."""
        cx = self.complex(c.p)
        if face not in cx.ranks:
            return 0
        coords = self.coefficients.coef_lattice(face, c.p).coordinates(v)
        blk = c.values[cx.block(c.q, face)]
        return sum(a * x for a, x in zip(blk, coords))

    def cup(self, a: Cochain, b: Cochain) -> Cochain:
        """
        Raises:
            FanError: NOT_A_COCYCLE if an input is not a cocycle
        """
        for c in (a, b):
            if not self.complex(c.p).is_cocycle(c.q, c.values):
                raise FanError("NOT_A_COCYCLE", f"input of bidegree ({c.p},{c.q}) is not a cocycle")
        p, q = a.p + b.p, a.q + b.q
        cx = self.complex(p)
        out = [0] * cx.dim(q)
        coeff = self.coefficients
        for face in cx.cells.get(q, []):
            tau, eta = face.sed, face.apex
            free = face.free_rays()
            amb = coeff.ambient(tau)
            gens, vals = [], []
            for xi in self.fan.max_cones_containing(eta):
                u = coeff.projected_lattice(tau, xi).vectors()
                for J in combinations(range(len(u)), p):
                    gens.append(wedge([u[j] for j in J], amb))
                    vals.append(self._cup_on(a, b, face, free, [u[j] for j in J]))
            target = coeff.coef_lattice(face, p)
            G = target.coordinate_matrix(gens)
            sol = rational_solve(G.T.copy(), vals)
            if sol is None or any(x.denominator != 1 for x in sol):
                raise FanError("NOT_A_COCYCLE", f"cup product is not defined on {face}", witness=str(face))
            blk = cx.block(q, face)
            for k, x in enumerate(sol):
                out[blk.start + k] = int(x)
        return Cochain(p, q, tuple(out))

    def _cup_on(self, a: Cochain, b: Cochain, face: CompFace, free: Face, u: List[Vector]) -> int:
        tau, eta = face.sed, face.apex
        coeff = self.coefficients
        amb = coeff.ambient(tau)
        total = 0
        for A in combinations(range(len(free)), a.q):
            B = tuple(i for i in range(len(free)) if i not in A)
            sigma = tuple(sorted(tau + tuple(free[i] for i in A)))
            front = CompFace(tau, sigma)
            back = CompFace(sigma, eta)
            cube_sign = shuffle_sign(A, B)
            wedge_q = compound_matrix(coeff.projection(tau, sigma), b.p)
            for I in combinations(range(len(u)), a.p):
                Ic = tuple(i for i in range(len(u)) if i not in I)
                x = self._value(a, front, wedge([u[i] for i in I], amb))
                if not x:
                    continue
                y = self._value(b, back, vecmat(wedge([u[i] for i in Ic], amb), wedge_q))
                total += cube_sign * shuffle_sign(I, Ic) * x * y
        return total

    def cohomology_class(self, c: Cochain) -> Vector:
        """Canonical coordinates of [c] in H^{p,q}(Σ̄)."""
        cx = self.complex(c.p)
        group = cx.cohomology(c.q)
        if group.presentation is None:
            return ()
        return group.presentation.reduce(c.values)

    def cocycle_basis(self, p: int, q: int) -> List[Cochain]:
        """Cocycles representing the canonical generators of H^{p,q}(Σ̄)."""
        cx = self.complex(p)
        group = cx.cohomology(q)
        if group.presentation is None:
            return []
        return [Cochain(p, q, g) for g in group.presentation.generators()]


def cup_product(fan: Fan, a: Cochain, b: Cochain, coefficients: Optional[CoefficientSystem] = None) -> Cochain:
    return CupProduct(fan, coefficients).cup(a, b)
