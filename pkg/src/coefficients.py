"""
Coefficient Lattices
====================

Multi-tangent lattices F_p on the faces of a fan Σ and of its canonical
compactification Σ̄, their dual pairings, canonical multivectors and
the incidence signs of the cellular structure.

A face of Σ̄ is a pair (sedentarity τ, apex σ) with τ ⊆ σ. Coefficients
of (τ, σ) live in Λ^p Z^{n-|τ|}, the quotient N^τ = N / N_τ being
identified with Z^{n-|τ|} through :func:`lattice.quotient_coordinates`.
Faces of the fan itself are the pairs with τ = 0.
"""

import logging
import threading
from dataclasses import dataclass
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .fan import Face, Fan
from .lattice import (
    SublatticeBasis,
    Vector,
    compound_matrix,
    exterior_power_basis,
    int_matrix,
    matmul,
    primitive,
    quotient_coordinates,
    stack,
    vecmat,
    wedge,
    zeros,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class CompFace:
    """Face C̄^τ_σ of the canonical compactification"""

    sed: Face
    apex: Face

    @property
    def dim(self) -> int:
        return len(self.apex) - len(self.sed)

    def free_rays(self) -> Face:
        """Rays of σ outside τ, sorted; these index the cube coordinates."""
        return tuple(i for i in self.apex if i not in self.sed)

    def facets(self) -> List[Tuple["CompFace", int, str]]:
        """
        Codimension-one faces with their incidence sign and tag

        With S the sorted rays of σ \\ τ and s_i its i-th element,
        ∂(τ, σ) = Σ_i (-1)^i [(τ, σ - s_i) - (τ + s_i, σ)].
        """
        out = []
        for i, s in enumerate(self.free_rays()):
            sign = -1 if i % 2 else 1
            lower = CompFace(self.sed, tuple(j for j in self.apex if j != s))
            raised = CompFace(tuple(sorted(self.sed + (s,))), self.apex)
            out.append((lower, sign, "same"))
            out.append((raised, -sign, "raise"))
        return out

    def __str__(self) -> str:
        return f"({list(self.sed)},{list(self.apex)})"


def comp_faces(fan: Fan, sedentarities: Optional[Sequence[Face]] = None) -> List[CompFace]:
    """
    All faces (τ, σ), τ ⊆ σ, of Σ̄, sorted by (sedentarity, apex)

    Args:
        fan: Simplicial fan
        sedentarities: Restrict to these sedentarity cones (default: all)
    """
    allowed = None if sedentarities is None else {tuple(sorted(s)) for s in sedentarities}
    out = []
    for sigma in fan.faces:
        k = len(sigma)
        for mask in range(1 << k):
            tau = tuple(sigma[i] for i in range(k) if mask >> i & 1)
            if allowed is None or tau in allowed:
                out.append(CompFace(tau, sigma))
    return sorted(out)


def fan_faces(fan: Fan) -> List[CompFace]:
    """Faces of Σ itself, as sedentarity-zero faces."""
    return sorted(CompFace((), s) for s in fan.faces)


class CoefficientSystem:
    """
    Memoized coefficient data of a fan

    All caches are guarded by a lock; results equal those of a fresh
    computation.

    Attributes
    ----------
    fan : Fan
        Host fan
    """

    def __init__(self, fan: Fan):
        self.fan = fan
        self.logger = logging.getLogger(__name__)
        self._lock = threading.Lock()
        self._quotients: Dict[Face, Tuple[np.ndarray, np.ndarray]] = {}
        self._images: Dict[Tuple[Face, Face], SublatticeBasis] = {}
        self._lattices: Dict[Tuple[Face, Face, int], SublatticeBasis] = {}

    def _cached(self, cache: dict, key, build):
        with self._lock:
            if key in cache:
                return cache[key]
        value = build()
        with self._lock:
            cache.setdefault(key, value)
            return cache[key]

    # ------------------------------------------------------------------
    # lattices
    # ------------------------------------------------------------------

    def quotient(self, tau: Face) -> Tuple[np.ndarray, np.ndarray]:
        """(P_τ, R_τ) for N -> N^τ."""
        return self._cached(self._quotients, tau, lambda: quotient_coordinates(self.fan.lattice(tau)))

    def ambient(self, tau: Face) -> int:
        return self.fan.rank - len(tau)

    def projected_lattice(self, tau: Face, eta: Face) -> SublatticeBasis:
        """N_η / N_τ inside N^τ, for η ⊇ τ."""
        def build():
            P, _ = self.quotient(tau)
            return SublatticeBasis.from_generators(self.ambient(tau), matmul(self.fan.lattice(eta).basis, P))
        return self._cached(self._images, (tau, eta), build)

    def coef_lattice(self, face, p: int) -> SublatticeBasis:
        """
        F_p of a face of Σ (a cone) or of Σ̄ (a CompFace)

        Sum of Λ^p(N_η / N_τ) over the maximal cones η containing σ.
        """
        if not isinstance(face, CompFace):
            face = CompFace((), tuple(face))
        tau, sigma = face.sed, face.apex

        def build():
            amb = comb(self.ambient(tau), p)
            gens = [exterior_power_basis(self.projected_lattice(tau, eta), p).basis
                    for eta in self.fan.max_cones_containing(sigma)]
            return SublatticeBasis.from_generators(amb, stack(gens, amb))
        return self._cached(self._lattices, (tau, sigma, p), build)

    def rank(self, face, p: int) -> int:
        return self.coef_lattice(face, p).rank

    # ------------------------------------------------------------------
    # maps
    # ------------------------------------------------------------------

    def projection(self, tau: Face, target: Face) -> np.ndarray:
        """Q = R_τ·P_target: N^τ -> N^target for τ ⊆ target."""
        _, R = self.quotient(tau)
        P, _ = self.quotient(target)
        return matmul(R, P)

    def inclusion_matrix(self, big: CompFace, small: CompFace, p: int) -> np.ndarray:
        """Rows: basis of F_p(big) in the basis of F_p(small), same sedentarity."""
        src = self.coef_lattice(big, p)
        dst = self.coef_lattice(small, p)
        return dst.coordinate_matrix(src.vectors()) if src.rank else zeros(0, dst.rank)

    def projection_matrix(self, face: CompFace, target: CompFace, p: int) -> np.ndarray:
        """Rows: images of the basis of F_p(face) in the basis of F_p(target), target sedentarity larger."""
        src = self.coef_lattice(face, p)
        dst = self.coef_lattice(target, p)
        if src.rank == 0:
            return zeros(0, dst.rank)
        wedge_q = compound_matrix(self.projection(face.sed, target.sed), p)
        return dst.coordinate_matrix(vecmat(v, wedge_q) for v in src.vectors())

    def coefficient_map(self, face: CompFace, target: CompFace, p: int) -> np.ndarray:
        """The map F_p(face) -> F_p(target) for target a face of ``face``."""
        if face.sed == target.sed:
            return self.inclusion_matrix(face, target, p)
        return self.projection_matrix(face, target, p)

    # ------------------------------------------------------------------
    # orientation
    # ------------------------------------------------------------------

    def nu(self, face) -> Vector:
        """
        Canonical multivector ν^τ_σ in Λ^k Z^{n-|τ|}

        Generator of Λ^k(N_σ / N_τ) positively proportional to the wedge
        of the projected rays of σ \\ τ in increasing order. ν of a ray is
        its primitive generator.
        """
        if not isinstance(face, CompFace):
            face = CompFace((), tuple(face))
        tau = face.sed
        free = face.free_rays()
        amb = self.ambient(tau)
        if not free:
            return (1,)
        P, _ = self.quotient(tau)
        rays = [vecmat(self.fan.rays[i], P) for i in free]
        lattice = self.projected_lattice(tau, face.apex)
        generator = wedge(lattice.vectors(), amb)
        direction = wedge(rays, amb)
        ratio_sign = next((1 if (a > 0) == (b > 0) else -1) for a, b in zip(generator, direction) if b != 0)
        return tuple(ratio_sign * x for x in generator)

    def normal_vector(self, tau: Face, ray: int) -> Vector:
        """Primitive generator e^τ_σ of N_σ / N_τ in N^τ, σ = τ + ray."""
        P, _ = self.quotient(tau)
        return primitive(vecmat(self.fan.rays[ray], P))

    def sign(self, small: CompFace, big: CompFace) -> int:
        """Incidence sign of a codimension-one face."""
        for face, sign, _ in big.facets():
            if face == small:
                return sign
        raise ValueError(f"{small} is not a facet of {big}")


@dataclass
class DualLattice:
    """
    F^p = Hom(F_p, Z) represented through the dual of the HNF basis of F_p

    A functional is a coordinate vector α with α(x) = α · coords(x).
    Restriction along a map with matrix M (rows: source basis in target
    coordinates) is α -> α·M^T.
    """

    lattice: SublatticeBasis

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def evaluate(self, alpha: Sequence[int], v: Sequence[int]) -> int:
        return sum(a * c for a, c in zip(alpha, self.lattice.coordinates(v)))

    def gram(self) -> np.ndarray:
        return int_matrix([[1 if i == j else 0 for j in range(self.rank)] for i in range(self.rank)], self.rank)

    @staticmethod
    def restrict(alpha: Sequence[int], inclusion: np.ndarray) -> Vector:
        return vecmat(alpha, inclusion.T.copy())


def dual_pairing(lattice: SublatticeBasis) -> DualLattice:
    return DualLattice(lattice)


@dataclass
class Orientation:
    """Canonical multivectors and incidence signs of Σ̄"""

    nu: Dict[CompFace, Vector]
    signs: Dict[Tuple[CompFace, CompFace], int]


def orientation(fan: Fan, coefficients: Optional[CoefficientSystem] = None) -> Orientation:
    coefficients = coefficients or CoefficientSystem(fan)
    faces = comp_faces(fan)
    nu = {f: coefficients.nu(f) for f in faces}
    signs = {}
    for f in faces:
        for g, s, _ in f.facets():
            signs[(g, f)] = s
    return Orientation(nu, signs)
