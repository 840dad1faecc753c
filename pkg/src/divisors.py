"""
Divisors and Tropical Modifications
===================================

Balancing, orders of vanishing of conewise linear functions, principal
divisors div(f) and the open tropical modification of a tropical fan
along the divisor of f.

Author: Otavio Feitosa
Date: 2025
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .coefficients import CoefficientSystem, CompFace
from .exceptions import FanError
from .fan import ConewiseLinear, Face, Fan, fans_isomorphic, star_fan
from .lattice import SublatticeBasis, Vector, compound_matrix, int_matrix, vecmat

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# balancing
# ----------------------------------------------------------------------

def normal_vector(fan: Fan, tau: Face, rho: int, coefficients: Optional[CoefficientSystem] = None) -> Vector:
    """n_{σ/τ} in N for σ = τ + ρ: a lift of the primitive generator of N_σ / N_τ."""
    coeff = coefficients or CoefficientSystem(fan)
    u = coeff.normal_vector(tau, rho)
    _, R = coeff.quotient(tau)
    return vecmat(u, R)


def balancing_defect(fan: Fan, k: Optional[int] = None, weights: Optional[Dict[Face, int]] = None,
                     coefficients: Optional[CoefficientSystem] = None) -> Optional[Face]:
    """
    First (k-1)-cone τ where Σ_{σ ⊃ τ} w(σ)·n_{σ/τ} is not in N_τ

    Args:
        fan: Host fan
        k: Dimension of the weighted cones (default: dim of the fan)
        weights: Weights on k-cones (default: the fan's facet weights)

    Returns:
        The failing cone, or None when the weights are balanced
    """
    coeff = coefficients or CoefficientSystem(fan)
    if k is None:
        k = fan.dim
    if weights is None:
        weights = {c: fan.weight(c) for c in fan.faces_of_dim(k)}
    if k == 0:
        return None
    for tau in fan.faces_of_dim(k - 1):
        total = [0] * coeff.ambient(tau)
        for sigma in fan.cones_containing(tau):
            if len(sigma) != k or not weights.get(sigma):
                continue
            rho = next(i for i in sigma if i not in tau)
            u = coeff.normal_vector(tau, rho)
            total = [t + weights[sigma] * x for t, x in zip(total, u)]
        if any(total):
            return tau
    return None


# ----------------------------------------------------------------------
# orders of vanishing
# ----------------------------------------------------------------------

def ord_along(fan: Fan, f: ConewiseLinear, tau: Face, normal_shift: int = 0,
              coefficients: Optional[CoefficientSystem] = None) -> Fraction:
    """
    Order of vanishing of f along a codimension-one cone τ

    ord_τ(f) = -Σ_σ w_σ f_σ(n_{σ/τ}) + f_τ(Σ_σ w_σ n_{σ/τ}).

    Args:
        normal_shift: Multiple of the first basis vector of N_τ added to
            every normal vector; the value does not depend on it

    Raises:
        FanError: NOT_PURE, UNKNOWN_CONE or UNBALANCED
    """
    if not fan.is_pure:
        raise FanError("NOT_PURE", "orders of vanishing need a pure fan")
    tau = fan.check_face(tau)
    if len(tau) != fan.dim - 1:
        raise FanError("UNKNOWN_CONE", f"{list(tau)} is not of codimension one", witness=list(tau))
    coeff = coefficients or CoefficientSystem(fan)
    shift = [0] * fan.rank
    if normal_shift and tau:
        shift = [normal_shift * x for x in fan.lattice(tau).vectors()[0]]
    total = [0] * fan.rank
    value = Fraction(0)
    for sigma in fan.facets_containing(tau):
        rho = next(i for i in sigma if i not in tau)
        n = [a + b for a, b in zip(normal_vector(fan, tau, rho, coeff), shift)]
        w = fan.weight(sigma)
        value -= w * f.value_at(n, sigma)
        total = [t + w * x for t, x in zip(total, n)]
    if tau and not fan.lattice(tau).contains(total) or not tau and any(total):
        raise FanError("UNBALANCED", f"fan is not balanced at {list(tau)}", witness=list(tau))
    value += f.value_at(total, tau)
    return value


@dataclass
class Divisor:
    """
    Divisor of dimension d-1 on Σ (a Minkowski weight)

    Attributes
    ----------
    fan : Fan
        Host fan
    weights : dict
        Nonzero weight per (d-1)-cone
    """

    fan: Fan
    weights: Dict[Face, int] = field(default_factory=dict)

    @property
    def support(self) -> List[Face]:
        return sorted(self.weights, key=lambda c: (len(c), c))

    @property
    def is_empty(self) -> bool:
        return not self.weights

    @property
    def is_effective(self) -> bool:
        return all(w > 0 for w in self.weights.values())

    @property
    def is_reduced(self) -> bool:
        return all(w == 1 for w in self.weights.values())

    def is_balanced(self) -> bool:
        return balancing_defect(self.fan, self.fan.dim - 1, self.weights) is None

    @property
    def used_rays(self) -> List[int]:
        """Rays of Σ met by the support; ray k of :meth:`as_fan` is ray used_rays[k] of Σ."""
        return sorted({i for c in self.weights for i in c})

    def lift(self, face: Face) -> Face:
        """Face of :meth:`as_fan` as a face of Σ."""
        used = self.used_rays
        return tuple(used[i] for i in face)

    def as_fan(self) -> Optional[Fan]:
        """Support as a standalone fan on the rays it uses."""
        if self.is_empty:
            return None
        used = self.used_rays
        remap = {r: k for k, r in enumerate(used)}
        support = self.support
        return Fan(self.fan.rank, [self.fan.rays[i] for i in used],
                   [[remap[i] for i in c] for c in support], [self.weights[c] for c in support])

    def __add__(self, other: "Divisor") -> "Divisor":
        out = dict(self.weights)
        for c, w in other.weights.items():
            out[c] = out.get(c, 0) + w
        return Divisor(self.fan, {c: w for c, w in out.items() if w})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.weights == other.weights

    def to_dict(self) -> Dict[str, object]:
        return {
            "cones": [list(c) for c in self.support],
            "weights": [self.weights[c] for c in self.support],
            "effective": self.is_effective,
            "reduced": self.is_reduced,
        }


def divisor(fan: Fan, f: ConewiseLinear, coefficients: Optional[CoefficientSystem] = None) -> Divisor:
    """
    div(f) with weights ord_τ(f) on the (d-1)-cones

    Raises:
        FanError: NON_INTEGRAL_FUNCTION when an order is not an integer
    """
    coeff = coefficients or CoefficientSystem(fan)
    weights = {}
    for tau in fan.faces_of_dim(fan.dim - 1):
        value = ord_along(fan, f, tau, coefficients=coeff)
        if value.denominator != 1:
            raise FanError("NON_INTEGRAL_FUNCTION", f"ord along {list(tau)} is {value}", witness=list(tau))
        if value:
            weights[tau] = int(value)
    return Divisor(fan, weights)


# ----------------------------------------------------------------------
# tropical modifications
# ----------------------------------------------------------------------

@dataclass
class TropModification:
    """
    Open tropical modification of Σ along div(f)

    Ray ρ of Σ becomes (e_ρ, f(e_ρ)) with the same index; the special ray
    e_⊥ = (0, ..., 0, 1) is appended last when the divisor is nonempty.
    """

    source: Fan
    function: ConewiseLinear
    fan: Fan
    divisor: Divisor
    up: Optional[int] = None

    @property
    def is_degenerate(self) -> bool:
        return self.up is None

    @property
    def projection(self):
        """p̃: Z^{n+1} -> Z^n, dropping the last coordinate."""
        n = self.source.rank
        return int_matrix([[1 if i == j else 0 for j in range(n)] for i in range(n + 1)], n)

    def sigma_circ(self, face: Face) -> Face:
        return tuple(face)

    def delta_sqcup(self, face: Face) -> Face:
        if self.up is None:
            raise FanError("UNKNOWN_CONE", "degenerate modification has no special ray")
        return tuple(face) + (self.up,)

    @property
    def up_vector(self) -> Vector:
        return (0,) * self.source.rank + (1,)

    def to_dict(self) -> Dict[str, object]:
        return {
            "fan": self.fan.to_dict(),
            "divisor": self.divisor.to_dict(),
            "up": self.up,
            "degenerate": self.is_degenerate,
        }


def tropical_modification(fan: Fan, f: ConewiseLinear,
                          coefficients: Optional[CoefficientSystem] = None) -> TropModification:
    """
    Build tropmod_f(Σ)

    Raises:
        FanError: NON_REDUCED_DIVISOR when div(f) has a weight other than 1
    """
    div = divisor(fan, f, coefficients)
    bad = next((c for c, w in div.weights.items() if w != 1), None)
    if bad is not None:
        raise FanError("NON_REDUCED_DIVISOR", f"div(f) has weight {div.weights[bad]} on {list(bad)}",
                       witness=list(bad))
    rays = [tuple(r) + (f.values[i],) for i, r in enumerate(fan.rays)]
    cones = [list(c) for c in fan.max_cones]
    weights = list(fan.weights)
    up = None
    if not div.is_empty:
        up = len(rays)
        rays.append((0,) * fan.rank + (1,))
        for delta in div.support:
            cones.append(list(delta) + [up])
            weights.append(1)
    result = Fan(fan.rank + 1, rays, cones, weights)
    defect = balancing_defect(result)
    if defect is not None:
        logger.warning(f"WARNING: modification is not balanced at {list(defect)}")
    logger.debug(f"[DEBUG] Tropical modification: {fan.n_rays} -> {result.n_rays} rays, "
                 f"{len(div.support)} divisor cones")
    return TropModification(fan, f, result, div, up)


@dataclass
class StarCheck:
    kind: str
    face: Face
    ok: bool

    def to_dict(self) -> Dict[str, object]:
        return {"kind": self.kind, "face": list(self.face), "ok": self.ok}


def star_of_modification_check(fan: Fan, f: ConewiseLinear) -> List[StarCheck]:
    """
    Star fans of a modification: Σ̃^{δ⊔} ≅ Δ^δ and Σ̃^{σ°} ≅ tropmod_{f^σ}(Σ^σ)
    """
    mod = tropical_modification(fan, f)
    out = []
    delta = mod.divisor.as_fan()
    if delta is not None:
        for face in delta.faces:
            lifted = mod.divisor.lift(face)
            left = star_fan(mod.fan, mod.delta_sqcup(lifted)).fan
            right = star_fan(delta, face).fan
            out.append(StarCheck("delta", lifted, fans_isomorphic(left, right)))
    for face in fan.faces:
        star = star_fan(fan, face)
        left = star_fan(mod.fan, mod.sigma_circ(face)).fan
        right = tropical_modification(star.fan, f.on_star(star)).fan
        out.append(StarCheck("sigma", face, fans_isomorphic(left, right)))
    failed = [c for c in out if not c.ok]
    if failed:
        logger.warning(f"WARNING: {len(failed)} star fan(s) of the modification do not match")
    return out


def local_modification_report(fan: Fan, f: ConewiseLinear, p: Optional[int] = None) -> List[Dict[str, object]]:
    """
    Rank identities and projections of the local modification formula

    For σ outside Δ: F_p(σ°) ≅ F^Σ_p(σ). For δ in Δ:
    rank F_p(δ⊔) = rank F^Δ_{p-1}(δ) + rank F^Δ_p(δ) and
    rank F_p(δ°) = rank F^Δ_{p-1}(δ) + rank F^Σ_p(δ); in both cases p̃_*
    maps onto the right-hand F_p.
    """
    mod = tropical_modification(fan, f)
    base = CoefficientSystem(fan)
    lifted = CoefficientSystem(mod.fan)
    delta = mod.divisor.as_fan()
    dcoef = CoefficientSystem(delta) if delta is not None else None
    # face of Σ -> the same face in the standalone divisor fan
    delta_faces = {mod.divisor.lift(c): c for c in delta.faces} if delta is not None else {}
    degrees = [p] if p is not None else list(range(fan.dim + 2))

    def push(face: Face, k: int) -> SublatticeBasis:
        src = lifted.coef_lattice(face, k)
        image = [vecmat(v, compound_matrix(mod.projection, k)) for v in src.vectors()]
        return SublatticeBasis.from_generators(len(image[0]) if image else 0, image) if image else None

    def rank_of(system: Optional[CoefficientSystem], face: Face, k: int) -> int:
        if system is None or k < 0:
            return 0
        return system.rank(CompFace((), face), k)

    rows = []
    for k in degrees:
        for face in fan.faces:
            target = base.coef_lattice(face, k)
            image = push(face, k)
            onto = target.rank == 0 if image is None else image == target
            if face not in delta_faces:
                expected = target.rank
                rows.append({"kind": "sigma", "face": list(face), "p": k,
                             "rank": lifted.rank(face, k), "expected": expected,
                             "ok": lifted.rank(face, k) == expected and onto})
                continue
            local = delta_faces[face]
            expected = rank_of(dcoef, local, k - 1) + target.rank
            rows.append({"kind": "delta_circ", "face": list(face), "p": k,
                         "rank": lifted.rank(face, k), "expected": expected,
                         "ok": lifted.rank(face, k) == expected and onto})
            up_face = mod.delta_sqcup(face)
            up_image = push(up_face, k)
            d_target = dcoef.coef_lattice(CompFace((), local), k)
            up_onto = d_target.rank == 0 if up_image is None else up_image == d_target
            expected = rank_of(dcoef, local, k - 1) + d_target.rank
            rows.append({"kind": "delta_sqcup", "face": list(face), "p": k,
                         "rank": lifted.rank(up_face, k), "expected": expected,
                         "ok": lifted.rank(up_face, k) == expected and up_onto})
    return rows
