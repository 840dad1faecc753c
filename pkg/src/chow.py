"""
Chow Rings of Simplicial Fans
=============================

Chow groups A^k(Σ) = Z^{Σ_k} / K^k, Minkowski weights, the product on
unimodular fans, the degree map, cycle classes in the compactification,
the Hodge isomorphism Ψ: H^{p,p}(Σ̄) -> A^p(Σ), Keel's decomposition and
Poincaré duality of the degree pairing.

Star fans are handled through :class:`StarChowRings`, which also builds the
restriction and Gysin maps used by the Deligne sequence.

Author: Otavio Feitosa
Date: 2025
"""

import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .coefficients import CoefficientSystem, CompFace
from .divisors import balancing_defect, ord_along
from .exceptions import FanError, PreconditionError
from .fan import ConewiseLinear, Face, Fan, StarFan, blow_up, is_saturated_at, is_unimodular, star_fan
from .homology import CellComplex, Cochain, CupProduct
from .lattice import (
    FinAbGroup,
    SublatticeBasis,
    Vector,
    clear_denominators,
    determinant,
    direct_sum,
    int_matrix,
    left_kernel,
    matmul,
    quotient_group,
    rank,
    rational_solve,
    right_kernel,
    smith_reduction,
    stack,
    subquotient,
    vecmat,
    zeros,
)
from .utils import parallel_map

logger = logging.getLogger(__name__)


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(int(x) * int(y) for x, y in zip(a, b))


def _form_on(fan: Fan, cone: Face, rho: int, choice: int = 0) -> Vector:
    """
    ℓ in M with ℓ(e_ρ) = 1 and ℓ = 0 on the other rays of a unimodular cone

    ``choice`` shifts ℓ along the first direction transverse to the cone,
    giving a second valid form when the cone is not full-dimensional.
    """
    n = fan.rank
    red = smith_reduction(fan.ray_matrix(cone))
    diag = [red.D[i, i] for i in range(len(cone))]
    if any(abs(x) != 1 for x in diag):
        raise FanError("NOT_UNIMODULAR", f"cone {list(cone)} is not unimodular", witness=list(cone))
    target = [1 if i == rho else 0 for i in cone]
    head = [x * d for x, d in zip(vecmat(target, red.U.T.copy()), diag)]
    full = list(head) + [0] * (n - len(head))
    if choice and n > len(cone):
        full[len(cone)] = choice
    return vecmat(full, red.V.T.copy())


# ----------------------------------------------------------------------
# Chow groups
# ----------------------------------------------------------------------

@dataclass
class ChowGroup:
    """
    A^k(Σ) with its presentation

    Attributes
    ----------
    fan : Fan
        Host fan
    k : int
        Degree
    cones : list of Face
        Generators X_σ, σ in Σ_k
    relations : np.ndarray
        Rows spanning K^k
    group : FinAbGroup
        Invariants with reduction data
    """

    fan: Fan
    k: int
    cones: List[Face]
    relations: np.ndarray
    group: FinAbGroup

    @cached_property
    def index(self) -> Dict[Face, int]:
        return {c: i for i, c in enumerate(self.cones)}

    @property
    def ngens(self) -> int:
        return len(self.cones)

    def vector(self, cone: Sequence[int]) -> Vector:
        cone = tuple(sorted(cone))
        out = [0] * self.ngens
        out[self.index[cone]] = 1
        return tuple(out)

    def reduce(self, v: Sequence[int]) -> Vector:
        return self.group.presentation.reduce(v)

    def is_zero(self, v: Sequence[int]) -> bool:
        return not any(self.reduce(v))

    def free_coordinates(self, v: Sequence[int]) -> Vector:
        return self.reduce(v)[len(self.group.torsion):]

    def free_generators(self) -> List[Vector]:
        pres = self.group.presentation
        orders = [d for d in pres.orders if d != 1]
        return [g for g, d in zip(pres.generators(), orders) if d == 0]

    @cached_property
    def relation_lattice(self) -> SublatticeBasis:
        return SublatticeBasis.from_generators(self.ngens, self.relations)

    def to_dict(self) -> Dict[str, object]:
        return {"k": self.k, "generators": len(self.cones), **self.group.to_dict()}


def chow_group(fan: Fan, k: int) -> ChowGroup:
    """
    A^k(Σ) presented by the localization relations

    For τ in Σ_{k-1} and ℓ in an HNF basis of {ℓ in M : ℓ = 0 on τ},
    Σ_{ρ ~ τ} ℓ(m_ρ) X_{τ+ρ} is a relation, m_ρ being the marked vector of
    ρ (its primitive generator unless marks were given).

    Examples:
        >>> str(chow_group(Fan(2, [[1, 0], [0, 1], [-1, -1]], [[0, 1], [1, 2], [0, 2]]), 1).group)
        'Z'
    """
    cones = fan.faces_of_dim(k) if k >= 0 else []
    index = {c: i for i, c in enumerate(cones)}
    rows = []
    if k >= 1:
        for tau in fan.faces_of_dim(k - 1):
            adjacent = fan.adjacent_rays(tau)
            if not adjacent:
                continue
            forms = right_kernel(int_matrix([fan.marks[i] for i in tau], fan.rank))
            for ell in forms.vectors():
                row = [0] * len(cones)
                for r in adjacent:
                    row[index[tuple(sorted(tau + (r,)))]] += _dot(ell, fan.marks[r])
                if any(row):
                    rows.append(row)
    relations = int_matrix(rows, len(cones))
    group = quotient_group(len(cones), relations if rows else None)
    logger.debug(f"[DEBUG] A^{k}: {len(cones)} generators, {len(rows)} relations -> {group}")
    return ChowGroup(fan, k, cones, relations, group)


def minkowski_weights(fan: Fan, k: int, coefficients: Optional[CoefficientSystem] = None) -> SublatticeBasis:
    """
    Basis of MW_k(Σ) inside Z^{Σ_k}

    Kernel of the balancing matrix with one column block per τ in
    Σ_{k-1}, written in the coordinates of N^τ.
    """
    coeff = coefficients or CoefficientSystem(fan)
    cones = fan.faces_of_dim(k) if k >= 0 else []
    if not cones:
        return SublatticeBasis.zero(0)
    if k == 0:
        return SublatticeBasis.full(1)
    blocks = []
    for tau in fan.faces_of_dim(k - 1):
        block = zeros(len(cones), coeff.ambient(tau))
        for i, sigma in enumerate(cones):
            if set(tau).issubset(sigma):
                rho = next(r for r in sigma if r not in tau)
                block[i, :] = list(coeff.normal_vector(tau, rho))
        blocks.append(block)
    matrix = np.hstack(blocks).astype(object) if blocks else zeros(len(cones), 0)
    return left_kernel(matrix)


def relations_pair_to_zero(fan: Fan, k: int) -> bool:
    """⟨X_σ, w⟩ = w(σ) vanishes on K^k for every Minkowski weight w."""
    group = chow_group(fan, k)
    weights = minkowski_weights(fan, k)
    if not group.relations.shape[0] or not weights.rank:
        return True
    prod = matmul(group.relations, weights.basis.T.copy())
    return not any(x != 0 for x in prod.flat)


# ----------------------------------------------------------------------
# Chow ring
# ----------------------------------------------------------------------

class ChowElement:
    """Z-combination of the X_σ of one degree, compared through its class"""

    __slots__ = ("ring", "k", "vector")

    def __init__(self, ring: "ChowRing", k: int, vector: Sequence[int]):
        self.ring = ring
        self.k = k
        self.vector: Vector = tuple(int(x) for x in vector)

    @property
    def group(self) -> ChowGroup:
        return self.ring.group(self.k)

    def coordinates(self) -> Vector:
        return self.group.reduce(self.vector)

    @property
    def is_zero(self) -> bool:
        return not any(self.coordinates())

    def _same(self, other: "ChowElement") -> None:
        if other.ring is not self.ring or other.k != self.k:
            raise FanError("RANK_MISMATCH", "Chow elements of different rings or degrees")

    def __add__(self, other: "ChowElement") -> "ChowElement":
        self._same(other)
        return ChowElement(self.ring, self.k, [a + b for a, b in zip(self.vector, other.vector)])

    def __sub__(self, other: "ChowElement") -> "ChowElement":
        self._same(other)
        return ChowElement(self.ring, self.k, [a - b for a, b in zip(self.vector, other.vector)])

    def __neg__(self) -> "ChowElement":
        return ChowElement(self.ring, self.k, [-a for a in self.vector])

    def __mul__(self, other):
        if isinstance(other, ChowElement):
            return self.ring.mul(self, other)
        return ChowElement(self.ring, self.k, [int(other) * a for a in self.vector])

    def __rmul__(self, other: int) -> "ChowElement":
        return ChowElement(self.ring, self.k, [int(other) * a for a in self.vector])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChowElement):
            return NotImplemented
        return other.ring is self.ring and other.k == self.k and self.coordinates() == other.coordinates()

    def __hash__(self) -> int:
        return hash((self.k, self.coordinates()))

    def __repr__(self) -> str:
        terms = [f"{c}*X{list(s)}" for c, s in zip(self.vector, self.group.cones) if c]
        return f"ChowElement(k={self.k}, {' + '.join(terms) or '0'})"


class ChowRing:
    """
    A^•(Σ) with memoized products

    Products rewrite repeated rays with the relation
    X_ρ = -Σ_{r} ℓ(e_r) X_r, ℓ(e_ρ) = 1, ℓ = 0 on the other rays of the
    monomial's support; this needs a unimodular fan with unmarked rays.
    """

    def __init__(self, fan: Fan):
        self.fan = fan
        self.logger = logging.getLogger(__name__)
        self._lock = threading.Lock()
        self._groups: Dict[int, ChowGroup] = {}
        self._monomials: Dict[Tuple[Tuple[int, ...], int], Dict[Face, int]] = {}

    @property
    def dim(self) -> int:
        return self.fan.dim

    @cached_property
    def _defect(self) -> Optional[Face]:
        return balancing_defect(self.fan)

    def group(self, k: int) -> ChowGroup:
        with self._lock:
            cached = self._groups.get(k)
        if cached is not None:
            return cached
        built = chow_group(self.fan, k)
        with self._lock:
            return self._groups.setdefault(k, built)

    def element(self, cone: Sequence[int]) -> ChowElement:
        cone = self.fan.check_face(cone)
        return ChowElement(self, len(cone), self.group(len(cone)).vector(cone))

    def ray(self, r: int) -> ChowElement:
        return self.element((r,))

    def zero(self, k: int) -> ChowElement:
        return ChowElement(self, k, [0] * self.group(k).ngens)

    def unit(self) -> ChowElement:
        return self.element(())

    def from_coordinates(self, k: int, coords: Sequence[int]) -> ChowElement:
        return ChowElement(self, k, self.group(k).group.presentation.lift(coords))

    # products ---------------------------------------------------------

    def _check_products(self) -> None:
        if not is_unimodular(self.fan):
            raise FanError("NOT_UNIMODULAR", "Chow products need a unimodular fan")
        if self.fan.marks != self.fan.rays:
            raise PreconditionError("PRECONDITION", "Chow products need unmarked rays")

    def _monomial(self, mono: Tuple[int, ...], choice: int) -> Dict[Face, int]:
        key = (mono, choice)
        with self._lock:
            cached = self._monomials.get(key)
        if cached is not None:
            return cached
        support = tuple(sorted(set(mono)))
        if len(mono) > self.dim or not self.fan.is_face(support):
            out: Dict[Face, int] = {}
        elif len(support) == len(mono):
            out = {support: 1}
        else:
            rho = next(r for r in support if mono.count(r) > 1)
            rest = list(mono)
            rest.remove(rho)
            ell = _form_on(self.fan, support, rho, choice)
            out = {}
            for r in range(self.fan.n_rays):
                if r in support:
                    continue
                c = _dot(ell, self.fan.rays[r])
                if not c:
                    continue
                for cone, v in self._monomial(tuple(sorted(rest + [r])), choice).items():
                    out[cone] = out.get(cone, 0) - c * v
            out = {cone: v for cone, v in out.items() if v}
        with self._lock:
            return self._monomials.setdefault(key, out)

    def mul(self, a: ChowElement, b: ChowElement, choice: int = 0) -> ChowElement:
        """
        Product a·b in canonical form

        Raises:
            FanError: NOT_UNIMODULAR
        """
        if a.ring is not self or b.ring is not self:
            raise FanError("RANK_MISMATCH", "Chow elements of different rings")
        self._check_products()
        k = a.k + b.k
        target = self.group(k)
        out = [0] * target.ngens
        if not target.ngens:
            return ChowElement(self, k, out)
        left, right = self.group(a.k).cones, self.group(b.k).cones
        for x, s in zip(a.vector, left):
            if not x:
                continue
            for y, t in zip(b.vector, right):
                if not y:
                    continue
                for cone, v in self._monomial(tuple(sorted(s + t)), choice).items():
                    out[target.index[cone]] += x * y * v
        return ChowElement(self, k, out)

    def degree(self, a: ChowElement) -> int:
        """
        deg: A^d(Σ) -> Z, Σ a_η X_η -> Σ a_η w_η

        Raises:
            FanError: UNBALANCED
        """
        defect = self._defect
        if defect is not None:
            raise FanError("UNBALANCED", f"fan is not balanced at {list(defect)}", witness=list(defect))
        if a.k != self.dim:
            return 0
        return sum(x * self.fan.weight(c) for x, c in zip(a.vector, self.group(a.k).cones))

    def pairing_matrix(self, k: int) -> np.ndarray:
        """deg(g_i·h_j) on free generators of A^k and A^{d-k}."""
        rows = self.group(k).free_generators()
        cols = self.group(self.dim - k).free_generators()
        out = zeros(len(rows), len(cols))
        for i, g in enumerate(rows):
            for j, h in enumerate(cols):
                out[i, j] = self.degree(self.mul(ChowElement(self, k, g), ChowElement(self, self.dim - k, h)))
        return out


def chow_mul(a: ChowElement, b: ChowElement, choice: int = 0) -> ChowElement:
    return a.ring.mul(a, b, choice)


def degree(fan: Fan, a: ChowElement) -> int:
    if a.ring.fan is not fan and a.ring.fan != fan:
        raise FanError("RANK_MISMATCH", "element does not live on this fan")
    return a.ring.degree(a)


# ----------------------------------------------------------------------
# the cycle map A^1 -> Div
# ----------------------------------------------------------------------

@dataclass
class ClMap:
    """
    cl: A^1(Σ) -> MW_{d-1}(Σ), X_ρ -> -div(indicator of ρ)

    ``integral`` is False when the verdicts only hold over Q (non-unimodular
    fan, or not saturated at 0); cokernel and kernel are then rational.
    """

    rows: List[List[Fraction]]
    integral: bool
    surjective: bool
    injective: bool
    cokernel: FinAbGroup
    kernel: FinAbGroup

    @property
    def bijective(self) -> bool:
        return self.surjective and self.injective

    def to_dict(self) -> Dict[str, object]:
        return {
            "matrix": [[str(x) for x in row] for row in self.rows],
            "integral": self.integral,
            "surjective": self.surjective,
            "injective": self.injective,
            "cokernel": self.cokernel.to_dict(),
            "kernel": self.kernel.to_dict(),
        }


def cl_map(fan: Fan, coefficients: Optional[CoefficientSystem] = None) -> ClMap:
    """
    Cycle map on divisors with surjectivity and injectivity verdicts

    Raises:
        FanError: UNBALANCED or NOT_PURE from the orders of vanishing
    """
    coeff = coefficients or CoefficientSystem(fan)
    d = fan.dim
    rays = fan.faces_of_dim(1)
    targets = fan.faces_of_dim(d - 1) if d >= 1 else []
    if d == 0 or not rays:
        zero = FinAbGroup(0, ())
        return ClMap([], True, True, True, zero, zero)
    rows = []
    for (r,) in rays:
        indicator = ConewiseLinear(fan, [1 if i == r else 0 for i in range(fan.n_rays)])
        rows.append([-ord_along(fan, indicator, tau, coefficients=coeff) for tau in targets])
    weights = minkowski_weights(fan, d - 1, coeff)
    relations = chow_group(fan, 1).relation_lattice
    integral = (all(x.denominator == 1 for row in rows for x in row)
                and is_unimodular(fan) and is_saturated_at(fan, ()))
    if integral:
        M = int_matrix([[int(x) for x in row] for row in rows], len(targets))
        image = SublatticeBasis.from_generators(len(targets), M)
        kernel = left_kernel(M)
        surjective = image == weights
        injective = kernel == relations
        cokernel = subquotient(weights, M) if weights.rank else FinAbGroup(0, ())
        kernel_group = subquotient(kernel, relations.basis) if kernel.rank else FinAbGroup(0, ())
        return ClMap(rows, True, surjective, injective, cokernel, kernel_group)
    M = int_matrix([clear_denominators(row) for row in rows], len(targets))
    r = rank(M)
    logger.debug(f"[DEBUG] cl map only checked over Q (rank {r})")
    return ClMap(rows, False, r == weights.rank, r == len(rays) - relations.rank,
                 FinAbGroup(weights.rank - r, ()), FinAbGroup(len(rays) - r - relations.rank, ()))


@dataclass
class LocalReport:
    """Per-cone verdicts of a local property"""

    name: str
    local: Dict[Face, bool]
    maps: Dict[Face, ClMap] = field(default_factory=dict, repr=False)

    @property
    def holds(self) -> bool:
        return all(self.local.values())

    def at(self, face: Sequence[int]) -> bool:
        return self.local[tuple(sorted(face))]

    @property
    def failures(self) -> List[Face]:
        return [f for f, ok in self.local.items() if not ok]

    def to_dict(self) -> Dict[str, object]:
        return {
            "property": self.name,
            "holds": self.holds,
            "failures": [list(f) for f in self.failures],
        }


def star_cl_maps(fan: Fan, threads: Optional[int] = None, progress: bool = False) -> Dict[Face, ClMap]:
    """cl on the star fan of every cone."""
    faces = list(fan.faces)
    maps = parallel_map(lambda f: cl_map(star_fan(fan, f).fan), faces,
                        desc="star fans", threads=threads, progress=progress)
    return dict(zip(faces, maps))


def principality_report(fan: Fan, threads: Optional[int] = None, progress: bool = False,
                        maps: Optional[Dict[Face, ClMap]] = None) -> LocalReport:
    """Σ is principal at σ iff cl is surjective on Σ^σ."""
    maps = maps or star_cl_maps(fan, threads, progress)
    return LocalReport("principal", {f: m.surjective for f, m in maps.items()}, maps)


def div_faithful_report(fan: Fan, threads: Optional[int] = None, progress: bool = False,
                        maps: Optional[Dict[Face, ClMap]] = None) -> LocalReport:
    """Σ is div-faithful at σ iff cl is injective on Σ^σ."""
    maps = maps or star_cl_maps(fan, threads, progress)
    return LocalReport("div_faithful", {f: m.injective for f, m in maps.items()}, maps)


# ----------------------------------------------------------------------
# cycle classes and the Hodge isomorphism
# ----------------------------------------------------------------------

@dataclass
class CycleClass:
    sigma: Face
    p: int
    q: int
    vector: Vector
    is_cycle: bool


def cycle_class(fan: Fan, sigma: Sequence[int], coefficients: Optional[CoefficientSystem] = None,
                space: Optional[CellComplex] = None) -> CycleClass:
    """
    Σ_{η ⊇ σ} w_η (C̄^σ_η, ν^σ_η) in C_{d-k,d-k}(Σ̄), k = |σ|
    """
    sigma = fan.check_face(sigma)
    space = space or CellComplex.compactification(fan, coefficients=coefficients)
    coeff = space.coefficients
    d = fan.dim
    p = q = d - len(sigma)
    cx = space.chain_complex(p, compact_only=True)
    out = [0] * cx.dim(q)
    for eta in fan.facets_containing(sigma):
        face = CompFace(sigma, eta)
        coords = coeff.coef_lattice(face, p).coordinates(coeff.nu(face))
        blk = cx.block(q, face)
        for j, c in enumerate(coords):
            out[blk.start + j] += fan.weight(eta) * c
    is_cycle = True
    if q >= 1 and cx.dim(q - 1):
        is_cycle = not any(vecmat(out, cx.boundary(q)))
    if not is_cycle:
        logger.warning(f"WARNING: cycle class of {list(sigma)} is not a cycle")
    return CycleClass(sigma, p, q, tuple(out), is_cycle)


def cycle_class_relations_check(fan: Fan, k: int, coefficients: Optional[CoefficientSystem] = None) -> bool:
    """Images of the localization relations in degree k are boundaries in Σ̄."""
    space = CellComplex.compactification(fan, coefficients=coefficients)
    group = chow_group(fan, k)
    if not group.relations.shape[0]:
        return True
    classes = [cycle_class(fan, c, space=space) for c in group.cones]
    q = fan.dim - k
    cx = space.chain_complex(q, compact_only=True)
    size = cx.dim(q)
    boundaries = SublatticeBasis.from_generators(size, cx.boundary(q + 1)) if cx.dim(q + 1) else \
        SublatticeBasis.zero(size)
    for row in group.relations.tolist():
        image = [0] * size
        for c, cls in zip(row, classes):
            if c:
                image = [a + c * b for a, b in zip(image, cls.vector)]
        if not boundaries.contains(image):
            return False
    return True


@dataclass
class HodgeDegree:
    p: int
    hodge: FinAbGroup
    chow: FinAbGroup
    surjective: bool
    injective: bool
    well_defined: bool
    kernel: FinAbGroup

    @property
    def isomorphism(self) -> bool:
        return self.well_defined and self.surjective and self.injective

    def to_dict(self) -> Dict[str, object]:
        return {
            "p": self.p,
            "hodge": self.hodge.to_dict(),
            "chow": self.chow.to_dict(),
            "surjective": self.surjective,
            "injective": self.injective,
            "isomorphism": self.isomorphism,
            "kernel": self.kernel.to_dict(),
        }


@dataclass
class HodgeReport:
    unimodular: bool
    degrees: List[HodgeDegree]
    vanishing: Dict[Tuple[int, int], FinAbGroup]
    off_diagonal: Dict[Tuple[int, int], FinAbGroup]

    @property
    def vanishes(self) -> bool:
        return all(g.is_zero for g in self.vanishing.values())

    @property
    def holds(self) -> bool:
        return self.vanishes and all(row.isomorphism for row in self.degrees)

    def to_dict(self) -> Dict[str, object]:
        return {
            "unimodular": self.unimodular,
            "holds": self.holds,
            "degrees": [row.to_dict() for row in self.degrees],
            "vanishing": {f"{p},{q}": g.to_dict() for (p, q), g in self.vanishing.items()},
            "off_diagonal": {f"{p},{q}": g.to_dict() for (p, q), g in self.off_diagonal.items()
                             if not g.is_zero},
        }


def psi_matrix(fan: Fan, p: int, space: CellComplex) -> np.ndarray:
    """Rows: cochain basis of C^{p,p}(Σ̄); columns: X_σ, σ in Σ_p; entries α_σ(ν_σ)."""
    coeff = space.coefficients
    cx = space.chain_complex(p)
    cones = fan.faces_of_dim(p)
    out = zeros(cx.dim(p), len(cones))
    for j, sigma in enumerate(cones):
        face = CompFace((), sigma)
        if face not in cx.ranks:
            continue
        coords = coeff.coef_lattice(face, p).coordinates(coeff.nu(face))
        blk = cx.block(p, face)
        for i, c in enumerate(coords):
            out[blk.start + i, j] = c
    return out


def hodge_iso_check(fan: Fan, coefficients: Optional[CoefficientSystem] = None) -> HodgeReport:
    """
    Ψ: H^{p,p}(Σ̄) -> A^p(Σ), α -> Σ_σ α_σ(ν_σ) X_σ, checked degree by degree
    """
    unimodular = is_unimodular(fan)
    if not unimodular:
        logger.warning("WARNING: fan is not unimodular; Ψ is only reported")
    space = CellComplex.compactification(fan, coefficients=coefficients)
    d = fan.dim
    degrees = []
    for p in range(d + 1):
        cx = space.chain_complex(p)
        chow = chow_group(fan, p)
        m = chow.ngens
        Phi = psi_matrix(fan, p, space)
        Z = cx.cocycles(p)
        B = cx.coboundaries(p) if cx.dim(p) else zeros(0, 0)
        hodge = cx.cohomology(p)
        ZPhi = matmul(Z.basis, Phi) if Z.rank else zeros(0, m)
        surjective = SublatticeBasis.from_generators(m, stack([ZPhi, chow.relations], m)) == SublatticeBasis.full(m)
        joint = stack([ZPhi, chow.relations], m)
        if Z.rank:
            ker = left_kernel(joint) if joint.shape[0] else SublatticeBasis.zero(0)
            ker_z = SublatticeBasis.from_generators(Z.rank, [v[:Z.rank] for v in ker.vectors()]) \
                if ker.rank else SublatticeBasis.zero(Z.rank)
            bz = SublatticeBasis.from_generators(Z.rank, Z.coordinate_matrix(B.tolist())) \
                if B.shape[0] else SublatticeBasis.zero(Z.rank)
            well_defined = ker_z.contains_lattice(bz)
            injective = well_defined and ker_z == bz
            kernel = subquotient(ker_z, bz.basis) if well_defined and ker_z.rank else FinAbGroup(0, ())
        else:
            well_defined, injective, kernel = True, True, FinAbGroup(0, ())
        degrees.append(HodgeDegree(p, hodge, chow.group, surjective, injective, well_defined, kernel))
    vanishing, off = {}, {}
    for p in range(d + 1):
        cx = space.chain_complex(p)
        for q in range(d + 1):
            if p == q:
                continue
            group = cx.cohomology(q)
            if p < q or q == 0:
                vanishing[(p, q)] = group
            else:
                off[(p, q)] = group
    report = HodgeReport(unimodular, degrees, vanishing, off)
    for (p, q), g in off.items():
        if not g.is_zero:
            logger.info(f"[INFO] H^{p},{q} of the compactification is {g}")
    return report


def psi(fan: Fan, ring: ChowRing, cochain: Cochain, space: CellComplex) -> ChowElement:
    return ChowElement(ring, cochain.p, vecmat(cochain.values, psi_matrix(fan, cochain.p, space)))


def hodge_ring_check(fan: Fan, p1: int, p2: int) -> bool:
    """Ψ(a⌣b) = ±Ψ(a)·Ψ(b) on generators, with one global sign."""
    cup = CupProduct(fan)
    ring = ChowRing(fan)
    signs = set()
    for a in cup.cocycle_basis(p1, p1):
        for b in cup.cocycle_basis(p2, p2):
            lhs = psi(fan, ring, cup.cup(a, b), cup.space)
            rhs = ring.mul(psi(fan, ring, a, cup.space), psi(fan, ring, b, cup.space))
            if lhs == rhs and lhs == -rhs:
                continue
            if lhs == rhs:
                signs.add(1)
            elif lhs == -rhs:
                signs.add(-1)
            else:
                return False
    return len(signs) <= 1


# ----------------------------------------------------------------------
# Keel decomposition and Poincaré duality
# ----------------------------------------------------------------------

@dataclass
class KeelReport:
    sigma: Face
    rows: List[Dict[str, object]]

    @property
    def holds(self) -> bool:
        return all(r["ok"] for r in self.rows)

    def to_dict(self) -> Dict[str, object]:
        return {"sigma": list(self.sigma), "holds": self.holds, "degrees": self.rows}


def keel_check(fan: Fan, sigma: Sequence[int]) -> KeelReport:
    """A^k(Bl_σ Σ) ≅ A^k(Σ) ⊕ ⊕_{i=1}^{|σ|-1} A^{k-i}(Σ^σ) on invariants."""
    sigma = fan.check_face(sigma)
    if not is_unimodular(fan):
        raise FanError("NOT_UNIMODULAR", "Keel's decomposition needs a unimodular fan")
    blown = blow_up(fan, sigma)
    star = star_fan(fan, sigma).fan
    rows = []
    for k in range(fan.dim + 1):
        left = chow_group(blown, k).group
        parts = [chow_group(fan, k).group]
        parts += [chow_group(star, k - i).group for i in range(1, len(sigma)) if k - i >= 0]
        right = direct_sum(parts)
        rows.append({"k": k, "blowup": str(left), "decomposition": str(right), "ok": left == right})
    return KeelReport(sigma, rows)


@dataclass
class PairingDegree:
    k: int
    left: FinAbGroup
    right: FinAbGroup
    determinant: int
    perfect: bool

    def to_dict(self) -> Dict[str, object]:
        return {
            "k": self.k,
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
            "determinant": self.determinant,
            "perfect": self.perfect,
        }


@dataclass
class ChowPDReport:
    coeff: str
    degrees: List[PairingDegree]

    @property
    def holds(self) -> bool:
        return all(row.perfect for row in self.degrees)

    def to_dict(self) -> Dict[str, object]:
        return {"coeff": self.coeff, "holds": self.holds, "degrees": [r.to_dict() for r in self.degrees]}


def chow_pd_check(fan: Fan, coeff: str = "z", ring: Optional[ChowRing] = None) -> ChowPDReport:
    """
    Perfectness of A^k × A^{d-k} -> Z

    Over Z: both groups free, square matrix, determinant ±1. Over Q:
    square matrix on the free parts with nonzero determinant.
    """
    if coeff not in ("z", "q"):
        raise ValueError(f"unknown coefficients: {coeff}")
    ring = ring or ChowRing(fan)
    d = fan.dim
    rows = []
    for k in range(d + 1):
        left, right = ring.group(k).group, ring.group(d - k).group
        M = ring.pairing_matrix(k)
        square = M.shape[0] == M.shape[1]
        det = determinant(M) if square else 0
        if coeff == "z":
            perfect = square and left.is_free and right.is_free and abs(det) == 1
        else:
            perfect = square and det != 0
        rows.append(PairingDegree(k, left, right, det, perfect))
    return ChowPDReport(coeff, rows)


# ----------------------------------------------------------------------
# star fans: restriction and Gysin maps
# ----------------------------------------------------------------------

class StarChowRings:
    """
    Chow rings of the star fans Σ^σ with restriction and Gysin maps

    For τ ≺ σ = τ + s, the restriction A^j(Σ^τ) -> A^j(Σ^σ) sends X_η
    (η ⊇ τ) to X_{η+s} when s is not in η, and to -Σ_r ℓ(e_r) X_{η+r}
    when s is in η, with ℓ(e_s) = 1 and ℓ = 0 on η - s. The Gysin map is
    its adjoint under the degree pairings: Gys = G_σ·R^T·G_τ^{-1}.
    """

    def __init__(self, fan: Fan):
        if not is_unimodular(fan):
            raise FanError("NOT_UNIMODULAR", "star Chow rings need a unimodular fan")
        self.fan = fan
        self.logger = logging.getLogger(__name__)
        self._lock = threading.Lock()
        self._stars: Dict[Face, StarFan] = {}
        self._rings: Dict[Face, ChowRing] = {}
        self._pairings: Dict[Tuple[Face, int], np.ndarray] = {}

    def star(self, face: Face) -> StarFan:
        with self._lock:
            if face not in self._stars:
                self._stars[face] = star_fan(self.fan, face)
            return self._stars[face]

    def ring(self, face: Face) -> ChowRing:
        with self._lock:
            cached = self._rings.get(face)
        if cached is not None:
            return cached
        ring = ChowRing(self.star(face).fan)
        with self._lock:
            return self._rings.setdefault(face, ring)

    def dim(self, face: Face) -> int:
        return self.fan.dim - len(face)

    def pairing(self, face: Face, j: int) -> np.ndarray:
        key = (face, j)
        with self._lock:
            cached = self._pairings.get(key)
        if cached is not None:
            return cached
        M = self.ring(face).pairing_matrix(j)
        with self._lock:
            return self._pairings.setdefault(key, M)

    def _restrict_cone(self, eta: Face, s: int) -> Dict[Face, int]:
        if s not in eta:
            big = tuple(sorted(eta + (s,)))
            return {big: 1} if self.fan.is_face(big) else {}
        ell = _form_on(self.fan, eta, s)
        out = {}
        for r in self.fan.adjacent_rays(eta):
            c = _dot(ell, self.fan.rays[r])
            if c:
                out[tuple(sorted(eta + (r,)))] = -c
        return out

    def restrict(self, tau: Face, s: int, j: int, vector: Sequence[int]) -> Vector:
        """Restriction of an element of A^j(Σ^τ), in generator coordinates of A^j(Σ^σ)."""
        sigma = tuple(sorted(tau + (s,)))
        src, dst = self.star(tau), self.star(sigma)
        src_group, dst_group = self.ring(tau).group(j), self.ring(sigma).group(j)
        out = [0] * dst_group.ngens
        for x, cone in zip(vector, src_group.cones):
            if not x:
                continue
            for eta, c in self._restrict_cone(src.lift_face(cone), s).items():
                out[dst_group.index[dst.face_of(eta)]] += x * c
        return tuple(out)

    def restriction_matrix(self, tau: Face, s: int, j: int) -> np.ndarray:
        """Rows: free generators of A^j(Σ^τ); columns: free coordinates of A^j(Σ^σ)."""
        sigma = tuple(sorted(tau + (s,)))
        src, dst = self.ring(tau).group(j), self.ring(sigma).group(j)
        rows = [dst.free_coordinates(self.restrict(tau, s, j, g)) for g in src.free_generators()]
        return int_matrix(rows, dst.group.free_rank)

    def gysin_matrix(self, sigma: Face, tau: Face, j: int) -> np.ndarray:
        """
        Gysin A^j(Σ^σ) -> A^{j+1}(Σ^τ) in free coordinates, τ a facet of σ

        Raises:
            PreconditionError: when a pairing is not perfect
        """
        s = next(r for r in sigma if r not in tau)
        e = self.dim(sigma)
        G_sigma = self.pairing(sigma, j)
        G_tau = self.pairing(tau, j + 1)
        R = self.restriction_matrix(tau, s, e - j)
        if G_tau.shape[0] != G_tau.shape[1] or abs(determinant(G_tau)) != 1:
            raise PreconditionError("PRECONDITION", f"pairing on the star of {list(tau)} is not perfect",
                                    witness=list(tau))
        rhs = matmul(G_sigma, R.T.copy()) if R.shape[0] else zeros(G_sigma.shape[0], G_tau.shape[0])
        rows = []
        for row in rhs.tolist():
            x = rational_solve(G_tau, row)
            if x is None or any(v.denominator != 1 for v in x):
                raise PreconditionError("PRECONDITION", "Gysin map is not integral", witness=list(sigma))
            rows.append([int(v) for v in x])
        return int_matrix(rows, G_tau.shape[0])

    def pushforward_agrees(self, sigma: Face, tau: Face, j: int) -> bool:
        """Gys(X_{η/σ}) = X_{η/τ} for every η ⊇ σ of relative dimension j."""
        G = self.gysin_matrix(sigma, tau, j)
        src, dst = self.star(sigma), self.star(tau)
        src_group = self.ring(sigma).group(j)
        dst_group = self.ring(tau).group(j + 1)
        for cone in src_group.cones:
            x = src_group.free_coordinates(src_group.vector(cone))
            image = vecmat(x, G) if G.shape[0] else ()
            eta = src.lift_face(cone)
            expected = dst_group.free_coordinates(dst_group.vector(dst.face_of(eta)))
            if tuple(image) != tuple(expected):
                return False
        return True


# ----------------------------------------------------------------------
# report
# ----------------------------------------------------------------------

def chow_report(fan: Fan, coeff: str = "z") -> Dict[str, object]:
    """Chow groups, Minkowski weight ranks and pairing determinants."""
    ring = ChowRing(fan)
    groups = {}
    for k in range(fan.dim + 1):
        g = ring.group(k).group
        groups[str(k)] = (g.rationalize() if coeff == "q" else g).to_dict()
    report: Dict[str, object] = {
        "coeff": coeff,
        "groups": groups,
        "minkowski_ranks": {str(k): minkowski_weights(fan, k).rank for k in range(fan.dim + 1)},
    }
    try:
        report["pairing"] = chow_pd_check(fan, coeff, ring).to_dict()
    except (FanError, PreconditionError) as e:
        logger.info(f"[INFO] Pairing skipped: {e}")
        report["pairing"] = None
    return report
