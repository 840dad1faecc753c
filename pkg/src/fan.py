"""
Rational Simplicial Fans
========================

Data model for rational simplicial fans and the surgery performed on
them: validation, star fans, products, skeleta, blow-ups and blow-downs,
lattice conditions (unimodularity, saturation), isomorphism testing and
conewise linear functions.

A face is a sorted tuple of ray indices; ``()`` is the zero cone.

Author: Otavio Feitosa
Date: 2025
"""

import logging
import threading
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import FanError
from .lattice import (
    SublatticeBasis,
    Vector,
    clear_denominators,
    content,
    determinant,
    int_matrix,
    left_kernel,
    primitive,
    quotient_coordinates,
    rank,
    rational_solve,
    saturate,
    smith_reduction,
    vecmat,
)

logger = logging.getLogger(__name__)

Face = Tuple[int, ...]


class Fan:
    """
    Validated rational simplicial fan

    Use :func:`validate_fan` for untrusted input; the constructor only
    normalizes and assumes the fan axioms hold.

    Parameters
    ----------
    rank : int
        Rank n of the ambient lattice Z^n
    rays : sequence of integer vectors
        Primitive ray generators e_ρ
    cones : sequence of ray-index sets
        Maximal cones
    weights : sequence of int, optional
        One weight per entry of ``cones`` (default 1)
    marks : sequence of integer vectors, optional
        Marked ray vectors used by the Chow presentation (default: rays)
    """

    def __init__(self, rank: int, rays: Sequence[Sequence[int]], cones: Iterable[Iterable[int]],
                 weights: Optional[Sequence[int]] = None, marks: Optional[Sequence[Sequence[int]]] = None):
        self.rank = int(rank)
        self.rays: Tuple[Vector, ...] = tuple(tuple(int(x) for x in r) for r in rays)
        cones = [tuple(sorted(int(i) for i in c)) for c in cones]
        if weights is None:
            weights = [1] * len(cones)
        paired = sorted(zip(cones, (int(w) for w in weights)), key=lambda cw: (len(cw[0]), cw[0]))
        if not paired:
            paired = [((), 1)]
        self.max_cones: Tuple[Face, ...] = tuple(c for c, _ in paired)
        self._weights: Dict[Face, int] = dict(paired)
        self.marks: Tuple[Vector, ...] = (tuple(tuple(int(x) for x in m) for m in marks)
                                          if marks is not None else self.rays)
        self._lock = threading.Lock()
        self._lattices: Dict[Face, SublatticeBasis] = {}

    # ------------------------------------------------------------------
    # face poset
    # ------------------------------------------------------------------

    @cached_property
    def faces(self) -> Tuple[Face, ...]:
        """All faces sorted by (dimension, ray indices)."""
        out = set()
        for cone in self.max_cones:
            k = len(cone)
            for mask in range(1 << k):
                out.add(tuple(cone[i] for i in range(k) if mask >> i & 1))
        return tuple(sorted(out, key=lambda f: (len(f), f)))

    @cached_property
    def face_index(self) -> Dict[Face, int]:
        return {f: i for i, f in enumerate(self.faces)}

    def faces_of_dim(self, k: int) -> List[Face]:
        return [f for f in self.faces if len(f) == k]

    @cached_property
    def dim(self) -> int:
        return max(len(c) for c in self.max_cones)

    @cached_property
    def is_pure(self) -> bool:
        return all(len(c) == self.dim for c in self.max_cones)

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def is_face(self, face: Iterable[int]) -> bool:
        return tuple(sorted(face)) in self.face_index

    def check_face(self, face: Iterable[int]) -> Face:
        face = tuple(sorted(int(i) for i in face))
        if face not in self.face_index:
            raise FanError("UNKNOWN_CONE", f"{list(face)} is not a cone of the fan", witness=list(face))
        return face

    def cones_containing(self, face: Face) -> List[Face]:
        s = set(face)
        return [f for f in self.faces if s.issubset(f)]

    def max_cones_containing(self, face: Face) -> List[Face]:
        s = set(face)
        return [c for c in self.max_cones if s.issubset(c)]

    def facets_containing(self, face: Face) -> List[Face]:
        """Top-dimensional cones containing ``face``."""
        return [c for c in self.max_cones_containing(face) if len(c) == self.dim]

    def adjacent_rays(self, face: Face) -> List[int]:
        """Rays ρ not in ``face`` such that face ∪ ρ is a cone."""
        out = set()
        for c in self.max_cones_containing(face):
            out.update(i for i in c if i not in face)
        return sorted(out)

    def weight(self, cone: Face) -> int:
        return self._weights.get(cone, 1)

    @property
    def weights(self) -> Tuple[int, ...]:
        return tuple(self._weights[c] for c in self.max_cones)

    @cached_property
    def is_reduced(self) -> bool:
        return all(w == 1 for w in self._weights.values())

    # ------------------------------------------------------------------
    # lattices
    # ------------------------------------------------------------------

    def ray_matrix(self, face: Sequence[int]) -> np.ndarray:
        return int_matrix([self.rays[i] for i in face], self.rank)

    def lattice(self, face: Face) -> SublatticeBasis:
        """N_σ: saturation of the span of the rays of σ."""
        with self._lock:
            cached = self._lattices.get(face)
        if cached is not None:
            return cached
        lat = saturate(SublatticeBasis.from_generators(self.rank, self.ray_matrix(face)))
        with self._lock:
            self._lattices[face] = lat
        return lat

    @cached_property
    def support_lattice(self) -> SublatticeBasis:
        """Saturation of the lattice spanned by all rays."""
        return saturate(SublatticeBasis.from_generators(self.rank, int_matrix(self.rays, self.rank)))

    def cone_index(self, face: Face) -> int:
        """Index of the lattice generated by the rays of σ in N_σ."""
        if not face:
            return 1
        return SublatticeBasis.from_generators(self.rank, self.ray_matrix(face)).index_in_saturation()

    # ------------------------------------------------------------------
    # serialization and comparison
    # ------------------------------------------------------------------

    def to_dict(self) -> Dict[str, object]:
        data: Dict[str, object] = {
            "rank": self.rank,
            "rays": [list(r) for r in self.rays],
            "cones": [list(c) for c in self.max_cones],
        }
        if not self.is_reduced:
            data["weights"] = list(self.weights)
        if self.marks != self.rays:
            data["marks"] = [list(m) for m in self.marks]
        return data

    def signature(self):
        """Ray-order independent description used for equality."""
        cones = frozenset(
            (frozenset(self.rays[i] for i in c), self.weight(c)) for c in self.max_cones)
        return self.rank, frozenset(self.rays), cones

    def __eq__(self, other) -> bool:
        if not isinstance(other, Fan):
            return NotImplemented
        return self.signature() == other.signature()

    def __hash__(self) -> int:
        return hash(self.signature())

    def __repr__(self) -> str:
        return (f"Fan(rank={self.rank}, rays={len(self.rays)}, "
                f"cones={len(self.max_cones)}, dim={self.dim})")


def point_fan(rank: int = 0) -> Fan:
    """The fan {0} in Z^rank."""
    return Fan(rank, [], [()])


# ----------------------------------------------------------------------
# validation
# ----------------------------------------------------------------------

def _fourier_motzkin(ineqs: List[Tuple[List[Fraction], bool]], nvars: int) -> Optional[List[Fraction]]:
    """
    Find y with a·y >= 0 (or > 0 when strict) for every inequality

    Returns:
        A solution, or None when the system is infeasible
    """
    systems = [ineqs]
    for k in reversed(range(nvars)):
        current = systems[-1]
        pos = [q for q in current if q[0][k] > 0]
        neg = [q for q in current if q[0][k] < 0]
        nxt = [q for q in current if q[0][k] == 0]
        seen = set()
        for a, sa in pos:
            for b, sb in neg:
                comb = [-b[k] * x + a[k] * y for x, y in zip(a, b)]
                scale = max((abs(x) for x in comb), default=0)
                key = (tuple(x / scale for x in comb) if scale else tuple(comb), sa or sb)
                if key in seen:
                    continue
                seen.add(key)
                nxt.append((comb, sa or sb))
        systems.append(nxt)
    if any(strict for _, strict in systems[-1]):
        return None
    y = [Fraction(0)] * nvars
    for k in range(nvars):
        system = systems[nvars - 1 - k]
        lower, upper = None, None
        lower_strict = upper_strict = False
        for a, strict in system:
            if a[k] == 0:
                continue
            rest = sum((a[j] * y[j] for j in range(k)), Fraction(0))
            bound = -rest / a[k]
            if a[k] > 0:
                if lower is None or bound > lower or (bound == lower and strict):
                    lower, lower_strict = bound, strict
            else:
                if upper is None or bound < upper or (bound == upper and strict):
                    upper, upper_strict = bound, strict
        if lower is None and upper is None:
            y[k] = Fraction(0)
        elif upper is None:
            y[k] = lower + 1 if lower_strict else lower
        elif lower is None:
            y[k] = upper - 1 if upper_strict else upper
        else:
            y[k] = (lower + upper) / 2 if lower != upper else lower
    return y


def overlap_witness(rays: Sequence[Vector], rank_n: int, a: Face, b: Face) -> Optional[Vector]:
    """
    Point in cone(a) ∩ cone(b) outside cone(a ∩ b), if one exists

    Both cones must be simplicial. Coordinates t = (s, u) with
    Σ s_i e_i = Σ u_j e_j, t >= 0 and some non-shared coordinate positive.
    """
    cols = list(a) + list(b)
    m = int_matrix([rays[i] for i in a] + [tuple(-x for x in rays[j]) for j in b], rank_n)
    kernel = left_kernel(m)
    if kernel.rank == 0:
        return None
    basis = kernel.vectors()
    shared = set(a) & set(b)
    marked = [pos for pos, i in enumerate(cols) if i not in shared]
    nvars = kernel.rank
    ineqs = []
    for pos in range(len(cols)):
        ineqs.append(([Fraction(basis[v][pos]) for v in range(nvars)], False))
    ineqs.append(([Fraction(sum(basis[v][pos] for pos in marked)) for v in range(nvars)], True))
    y = _fourier_motzkin(ineqs, nvars)
    if y is None:
        return None
    t = [sum(y[v] * basis[v][pos] for v in range(nvars)) for pos in range(len(cols))]
    point = [sum(t[pos] * rays[i][c] for pos, i in enumerate(a)) for c in range(rank_n)]
    ints = clear_denominators(point)
    g = content(ints) or 1
    return tuple(x // g for x in ints)


def validate_fan(raw: Dict, check_overlap: bool = True, marked: bool = False) -> Fan:
    """
    Validate raw fan data

    Args:
        raw: Dict with keys rank, rays, cones and optional weights/marks
        check_overlap: Run the exact cone intersection test
        marked: Accept non-primitive ray vectors, keeping them as marks

    Returns:
        Validated Fan

    Raises:
        FanError: NON_PRIMITIVE_RAY, DUPLICATE_RAY, DEPENDENT_RAYS,
            CONE_OVERLAP, DUPLICATE_CONE, BAD_RAY_INDEX or RANK_MISMATCH
    """
    n = int(raw["rank"])
    raw_rays = [tuple(int(x) for x in r) for r in raw.get("rays", [])]
    rays: List[Vector] = []
    marks: List[Vector] = [tuple(int(x) for x in m) for m in raw["marks"]] if raw.get("marks") else []
    for i, r in enumerate(raw_rays):
        if len(r) != n:
            raise FanError("RANK_MISMATCH", f"ray {i} has {len(r)} coordinates, rank is {n}", witness=i)
        if not any(r):
            raise FanError("NON_PRIMITIVE_RAY", f"ray {i} is the zero vector", witness=i)
        g = content(r)
        if g != 1 and not marked:
            raise FanError("NON_PRIMITIVE_RAY", f"ray {i} = {list(r)} is divisible by {g}", witness=i)
        rays.append(tuple(x // g for x in r))
        if marked and not raw.get("marks"):
            marks.append(r)
    first: Dict[Vector, int] = {}
    for i, r in enumerate(rays):
        if r in first:
            raise FanError("DUPLICATE_RAY", f"rays {first[r]} and {i} are both {list(r)}", witness=[first[r], i])
        first[r] = i

    cones: List[Face] = []
    for ci, c in enumerate(raw.get("cones", [])):
        c = [int(i) for i in c]
        if any(i < 0 or i >= len(rays) for i in c):
            raise FanError("BAD_RAY_INDEX", f"cone {ci} refers to a missing ray", witness=ci)
        if len(set(c)) != len(c):
            raise FanError("DEPENDENT_RAYS", f"cone {ci} repeats a ray", witness=sorted(c))
        cones.append(tuple(sorted(c)))
    weights = [int(w) for w in raw["weights"]] if raw.get("weights") is not None else [1] * len(cones)
    if len(weights) != len(cones):
        raise FanError("RANK_MISMATCH", f"{len(weights)} weights for {len(cones)} cones")
    seen = set()
    for c in cones:
        if c in seen:
            raise FanError("DUPLICATE_CONE", f"cone {list(c)} is listed twice", witness=list(c))
        seen.add(c)

    for c in cones:
        if rank(int_matrix([rays[i] for i in c], n)) != len(c):
            raise FanError("DEPENDENT_RAYS", f"rays of cone {list(c)} are linearly dependent",
                           witness=list(c))

    # rays not used by any listed cone are cones themselves
    used = {i for c in cones for i in c}
    for i in range(len(rays)):
        if i not in used:
            logger.debug(f"[DEBUG] Ray {i} appears in no cone; adding it as a maximal cone")
            cones.append((i,))
            weights.append(1)

    keep = [k for k, c in enumerate(cones) if not any(set(c) < set(o) for o in cones)]
    cones = [cones[k] for k in keep]
    weights = [weights[k] for k in keep]

    if check_overlap:
        for i in range(len(cones)):
            for j in range(i + 1, len(cones)):
                point = overlap_witness(rays, n, cones[i], cones[j])
                if point is not None:
                    raise FanError("CONE_OVERLAP",
                                   f"cones {list(cones[i])} and {list(cones[j])} overlap",
                                   witness=list(point))
    return Fan(n, rays, cones, weights, marks if marks else None)


# ----------------------------------------------------------------------
# star fans and products
# ----------------------------------------------------------------------

@dataclass
class StarFan:
    """
    Star fan Σ^σ in N^σ = Z^{n - |σ|}

    Attributes
    ----------
    fan : Fan
        The star fan itself
    sigma : Face
        Originating cone
    P : np.ndarray
        Projection N -> N^σ (x -> x·P)
    R : np.ndarray
        Lift of the standard basis of N^σ (R·P = I)
    ray_map : dict
        Ray of Σ adjacent to σ -> ray of Σ^σ
    """

    fan: Fan
    sigma: Face
    P: np.ndarray
    R: np.ndarray
    ray_map: Dict[int, int] = field(default_factory=dict)

    def face_of(self, face: Face) -> Face:
        """Image of a cone η ⊇ σ."""
        return tuple(sorted(self.ray_map[i] for i in face if i not in self.sigma))

    def lift_face(self, face: Face) -> Face:
        inverse = {v: k for k, v in self.ray_map.items()}
        return tuple(sorted(set(self.sigma) | {inverse[i] for i in face}))

    def project(self, v: Sequence[int]) -> Vector:
        return vecmat(v, self.P)


def star_fan(fan: Fan, sigma: Iterable[int]) -> StarFan:
    """
    Star fan of Σ at σ

    Raises:
        FanError: UNKNOWN_CONE if σ is not a cone of Σ
    """
    sigma = fan.check_face(sigma)
    P, R = quotient_coordinates(fan.lattice(sigma))
    if not sigma:
        return StarFan(fan, sigma, P, R, {i: i for i in range(fan.n_rays)})
    adjacent = fan.adjacent_rays(sigma)
    ray_map = {r: k for k, r in enumerate(adjacent)}
    rays = [primitive(vecmat(fan.rays[r], P)) for r in adjacent]
    cones, weights = [], []
    for c in fan.max_cones_containing(sigma):
        cones.append([ray_map[i] for i in c if i not in sigma])
        weights.append(fan.weight(c))
    star = Fan(fan.rank - len(sigma), rays, cones, weights)
    return StarFan(star, sigma, P, R, ray_map)


def product(left: Fan, right: Fan) -> Fan:
    """Product fan in Z^{n1 + n2} with weights multiplied."""
    n1, n2 = left.rank, right.rank
    rays = [r + (0,) * n2 for r in left.rays] + [(0,) * n1 + r for r in right.rays]
    off = left.n_rays
    cones, weights = [], []
    for a in left.max_cones:
        for b in right.max_cones:
            cones.append(list(a) + [off + j for j in b])
            weights.append(left.weight(a) * right.weight(b))
    return Fan(n1 + n2, rays, cones, weights)


def k_skeleton(fan: Fan, k: int) -> Fan:
    """Fan of all cones of dimension at most k."""
    if k >= fan.dim:
        return fan
    if k <= 0:
        return point_fan(fan.rank)
    cones = [f for f in fan.faces if len(f) == k] + [c for c in fan.max_cones if len(c) < k]
    return Fan(fan.rank, fan.rays, cones)


# ----------------------------------------------------------------------
# blow-ups
# ----------------------------------------------------------------------

def blow_up(fan: Fan, sigma: Iterable[int], rho_vector: Optional[Sequence[int]] = None) -> Fan:
    """
    Star subdivision of Σ along a ray through the relative interior of σ

    The new ray is appended last. Its default generator is the sum of the
    rays of σ.

    Raises:
        FanError: UNKNOWN_CONE, or NOT_IN_RELINT when ``rho_vector`` is not
            in the relative interior of σ
    """
    sigma = fan.check_face(sigma)
    if not sigma:
        raise FanError("UNKNOWN_CONE", "cannot blow up the zero cone", witness=[])
    if rho_vector is None:
        rho_vector = tuple(sum(fan.rays[i][c] for i in sigma) for c in range(fan.rank))
    coords = rational_solve(fan.ray_matrix(sigma), rho_vector)
    if coords is None or any(x <= 0 for x in coords):
        raise FanError("NOT_IN_RELINT", f"{list(rho_vector)} is not in the relative interior of {list(sigma)}",
                       witness=list(rho_vector))
    if len(sigma) == 1:
        return fan
    new = fan.n_rays
    rays = list(fan.rays) + [primitive(rho_vector)]
    cones, weights = [], []
    for eta in fan.max_cones:
        if set(sigma).issubset(eta):
            for i in sigma:
                cones.append([j for j in eta if j != i] + [new])
                weights.append(fan.weight(eta))
        else:
            cones.append(list(eta))
            weights.append(fan.weight(eta))
    logger.debug(f"[DEBUG] Blow-up along {list(sigma)}: {len(fan.max_cones)} -> {len(cones)} maximal cones")
    return Fan(fan.rank, rays, cones, weights)


def blow_down(fan: Fan, rho: int) -> Fan:
    """
    Inverse of :func:`blow_up` along the ray ``rho``

    Raises:
        FanError: NOT_A_BLOWUP if Σ is not a star subdivision along ρ
    """
    if not 0 <= rho < fan.n_rays:
        raise FanError("UNKNOWN_CONE", f"ray {rho} does not exist", witness=rho)
    star = fan.max_cones_containing((rho,))
    e_rho = fan.rays[rho]
    if star:
        mu0 = star[0]
        base = [i for i in mu0 if i != rho]
        for a in fan.adjacent_rays((rho,)):
            if a in mu0:
                continue
            candidate = _blow_down_candidate(fan, rho, base + [a], a, star, e_rho)
            if candidate is not None:
                return candidate
    raise FanError("NOT_A_BLOWUP", f"ray {rho} is not the exceptional ray of a star subdivision", witness=rho)


def _blow_down_candidate(fan: Fan, rho: int, t_rays: List[int], a: int,
                         star: List[Face], e_rho: Vector) -> Optional[Fan]:
    coords = rational_solve(fan.ray_matrix(t_rays), e_rho)
    if coords is None or any(x < 0 for x in coords):
        return None
    center = sorted(i for i, x in zip(t_rays, coords) if x > 0)
    if a not in center or len(center) < 2:
        return None
    merged: Dict[Face, int] = {}
    for mu in star:
        missing = [i for i in center if i not in mu]
        if len(missing) != 1:
            return None
        merged[tuple(sorted([i for i in mu if i != rho] + missing))] = fan.weight(mu)
    others = {c: fan.weight(c) for c in fan.max_cones if rho not in c}
    cones = list(merged) + list(others)
    weights = list(merged.values()) + list(others.values())

    remap = {i: i - (i > rho) for i in range(fan.n_rays) if i != rho}
    rays = [r for i, r in enumerate(fan.rays) if i != rho]
    raw = {
        "rank": fan.rank,
        "rays": [list(r) for r in rays],
        "cones": [[remap[i] for i in c] for c in cones],
        "weights": weights,
    }
    try:
        result = validate_fan(raw)
    except FanError:
        return None
    if blow_up(result, [remap[i] for i in center], e_rho) != fan:
        return None
    logger.debug(f"[DEBUG] Blow-down along ray {rho}: center {center}")
    return result


# ----------------------------------------------------------------------
# lattice conditions and connectivity
# ----------------------------------------------------------------------

def unimodularity_report(fan: Fan) -> Dict[Face, int]:
    """Index of the ray lattice of each maximal cone in its saturation."""
    return {c: fan.cone_index(c) for c in fan.max_cones}


def is_unimodular(fan: Fan) -> bool:
    return all(idx == 1 for idx in unimodularity_report(fan).values())


def is_saturated_at(fan: Fan, sigma: Iterable[int]) -> bool:
    """The rays of Σ^σ generate a saturated sublattice of N^σ."""
    star = star_fan(fan, sigma).fan
    if not star.rays:
        return True
    return SublatticeBasis.from_generators(star.rank, int_matrix(star.rays, star.rank)).is_saturated()


def is_saturated(fan: Fan) -> bool:
    return all(is_saturated_at(fan, f) for f in fan.faces)


def facet_components(fan: Fan) -> List[List[Face]]:
    """Components of the graph on facets joined through shared codimension-one faces."""
    if not fan.is_pure:
        raise FanError("NOT_PURE", "fan is not pure-dimensional")
    facets = list(fan.max_cones)
    d = fan.dim
    by_ridge: Dict[Face, List[int]] = {}
    for k, c in enumerate(facets):
        for i in c:
            by_ridge.setdefault(tuple(j for j in c if j != i), []).append(k)
    seen = [False] * len(facets)
    components = []
    for start in range(len(facets)):
        if seen[start]:
            continue
        comp, queue = [], deque([start])
        seen[start] = True
        while queue:
            k = queue.popleft()
            comp.append(facets[k])
            if d == 0:
                continue
            for i in facets[k]:
                for other in by_ridge[tuple(j for j in facets[k] if j != i)]:
                    if not seen[other]:
                        seen[other] = True
                        queue.append(other)
        components.append(sorted(comp))
    return components


def connected_through_codim_one(fan: Fan) -> bool:
    """
    Raises:
        FanError: NOT_PURE for fans that are not pure-dimensional
    """
    return len(facet_components(fan)) == 1


# ----------------------------------------------------------------------
# isomorphism
# ----------------------------------------------------------------------

def _span_coordinates(fan: Fan) -> Tuple[int, List[Vector]]:
    span = fan.support_lattice
    return span.rank, [span.coordinates(r) for r in fan.rays]


def fans_isomorphic(a: Fan, b: Fan) -> bool:
    """
    Search for a unimodular map between the saturated spans of the rays
    sending rays to rays and cones to cones, weights included.
    """
    if (a.n_rays != b.n_rays or len(a.max_cones) != len(b.max_cones) or a.dim != b.dim
            or sorted(a.weights) != sorted(b.weights)):
        return False
    sa, xa = _span_coordinates(a)
    sb, xb = _span_coordinates(b)
    if sa != sb:
        return False
    if sa == 0:
        return True

    def degree(fan, i):
        return sorted((len(c), fan.weight(c)) for c in fan.max_cones if i in c)

    deg_a = [degree(a, i) for i in range(a.n_rays)]
    deg_b = [degree(b, j) for j in range(b.n_rays)]
    if sorted(map(tuple, deg_a)) != sorted(map(tuple, deg_b)):
        return False

    basis_idx: List[int] = []
    for i in range(a.n_rays):
        if rank(int_matrix([xa[k] for k in basis_idx + [i]], sa)) == len(basis_idx) + 1:
            basis_idx.append(i)
        if len(basis_idx) == sa:
            break
    X = int_matrix([xa[i] for i in basis_idx], sa)
    cones_b = {frozenset(c): b.weight(c) for c in b.max_cones}
    ray_b = {v: j for j, v in enumerate(xb)}
    candidates = [[j for j in range(b.n_rays) if deg_b[j] == deg_a[i]] for i in basis_idx]

    def search(prefix: List[int]) -> bool:
        if len(prefix) == sa:
            return _try_map(X, [xb[j] for j in prefix], xa, ray_b, a, cones_b)
        for j in candidates[len(prefix)]:
            if j not in prefix and search(prefix + [j]):
                return True
        return False

    return search([])


def _try_map(X, images, xa, ray_b, a: Fan, cones_b) -> bool:
    s = X.shape[0]
    columns = []
    for c in range(s):
        sol = rational_solve(X.T.copy(), [images[r][c] for r in range(s)])
        if sol is None or any(x.denominator != 1 for x in sol):
            return False
        columns.append([int(x) for x in sol])
    A = int_matrix([[columns[c][r] for c in range(s)] for r in range(s)], s)
    if abs(determinant(A)) != 1:
        return False
    perm = {}
    for i, v in enumerate(xa):
        w = vecmat(v, A)
        if w not in ray_b:
            return False
        perm[i] = ray_b[w]
    if len(set(perm.values())) != len(perm):
        return False
    for c in a.max_cones:
        image = frozenset(perm[i] for i in c)
        if cones_b.get(image) != a.weight(c):
            return False
    return True


# ----------------------------------------------------------------------
# conewise linear functions
# ----------------------------------------------------------------------

class ConewiseLinear:
    """
    Conewise linear function given by its values f(e_ρ) on the rays

    Attributes
    ----------
    fan : Fan
        Host fan
    values : tuple of int
        One value per ray
    """

    def __init__(self, fan: Fan, values: Sequence[int]):
        if len(values) != fan.n_rays:
            raise FanError("RANK_MISMATCH", f"{len(values)} values for {fan.n_rays} rays")
        self.fan = fan
        self.values: Tuple[int, ...] = tuple(int(v) for v in values)

    @classmethod
    def linear(cls, fan: Fan, ell: Sequence[int]) -> "ConewiseLinear":
        return cls(fan, [sum(x * y for x, y in zip(ell, r)) for r in fan.rays])

    @classmethod
    def zero(cls, fan: Fan) -> "ConewiseLinear":
        return cls(fan, [0] * fan.n_rays)

    def value_at(self, v: Sequence, cone: Face) -> Fraction:
        """f(v) for v in the span of ``cone`` (linear extension of f_σ)."""
        if not cone:
            if any(v):
                raise FanError("NOT_IN_RELINT", f"{list(v)} is not in the zero cone")
            return Fraction(0)
        coords = rational_solve(self.fan.ray_matrix(cone), v)
        if coords is None:
            raise FanError("NOT_IN_RELINT", f"{list(v)} is not in the span of cone {list(cone)}")
        return sum((c * self.values[i] for c, i in zip(coords, cone)), Fraction(0))

    def is_integral(self) -> bool:
        """f_σ takes integer values on N_σ for every maximal cone."""
        for c in self.fan.max_cones:
            for v in self.fan.lattice(c).vectors():
                if self.value_at(v, c).denominator != 1:
                    return False
        return True

    def linear_form(self) -> Optional[List[Fraction]]:
        """Rational ℓ with ℓ(e_ρ) = f(e_ρ) on all rays, or None."""
        if not self.fan.rays:
            return [Fraction(0)] * self.fan.rank
        return rational_solve(int_matrix(self.fan.rays, self.fan.rank).T.copy(), self.values)

    def is_linear(self) -> bool:
        return self.linear_form() is not None

    def integral_form_on(self, cone: Face) -> Vector:
        """Some ℓ in M = (Z^n)* agreeing with f on σ (requires f_σ integral on N_σ)."""
        n = self.fan.rank
        if not cone:
            return (0,) * n
        lat = self.fan.lattice(cone)
        vals = []
        for v in lat.vectors():
            x = self.value_at(v, cone)
            if x.denominator != 1:
                raise FanError("NON_INTEGRAL_FUNCTION", f"f is not integral on cone {list(cone)}",
                               witness=list(cone))
            vals.append(int(x))
        red = smith_reduction(lat.basis)
        head = vecmat(vals, red.U.T.copy())
        full = list(head) + [0] * (n - len(head))
        return vecmat(full, red.V.T.copy())

    def on_star(self, star: StarFan) -> "ConewiseLinear":
        """f^σ = π_*(f - ℓ) on the star fan, with ℓ in M equal to f on σ."""
        ell = self.integral_form_on(star.sigma)
        values = [0] * star.fan.n_rays
        for r, k in star.ray_map.items():
            m = content(star.project(self.fan.rays[r]))
            diff = self.values[r] - sum(x * y for x, y in zip(ell, self.fan.rays[r]))
            if diff % m != 0:
                raise FanError("NON_INTEGRAL_FUNCTION", f"f^σ is not integral at ray {r}", witness=r)
            values[k] = diff // m
        return ConewiseLinear(star.fan, values)

    def _check(self, other: "ConewiseLinear") -> None:
        if other.fan is not self.fan and other.fan != self.fan:
            raise FanError("RANK_MISMATCH", "functions live on different fans")

    def __add__(self, other: "ConewiseLinear") -> "ConewiseLinear":
        self._check(other)
        return ConewiseLinear(self.fan, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "ConewiseLinear") -> "ConewiseLinear":
        self._check(other)
        return ConewiseLinear(self.fan, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self) -> "ConewiseLinear":
        return ConewiseLinear(self.fan, [-a for a in self.values])

    def __mul__(self, k: int) -> "ConewiseLinear":
        return ConewiseLinear(self.fan, [k * a for a in self.values])

    __rmul__ = __mul__

    def to_dict(self) -> Dict[str, object]:
        return {"values": list(self.values)}

    def __repr__(self) -> str:
        return f"ConewiseLinear(values={list(self.values)})"
